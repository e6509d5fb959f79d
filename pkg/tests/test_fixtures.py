import json

import pytest

from skeinforge import fixtures
from skeinforge.determinant import determinant
from skeinforge.diagram import Resolution, resolve


def test_manifest_loads_and_validates():
    entries = fixtures.load_manifest(validate=True)
    names = [e.name for e in entries]
    assert names == sorted(names)
    assert len([e for e in entries if e.pd_path]) >= 12
    for e in entries:
        if e.has_both:
            assert e.det_from_grid() == determinant(e.pd()) == e.expected["det"], e.name


def test_corrupted_manifest_is_refused(tmp_path):
    src = fixtures.fixture_dir()
    data = json.loads((src / "manifest.json").read_text())
    for e in data["entries"]:
        for key in ("pd_path", "grid_path"):
            if key in e:
                (tmp_path / e[key]).write_text((src / e[key]).read_text())
    # the trefoil entry now points at the 5_1 grid: determinants 3 vs 5
    for e in data["entries"]:
        if e["name"] == "trefoil":
            e["grid_path"] = "knot_5_1.grid"
    (tmp_path / "manifest.json").write_text(json.dumps(data))
    with pytest.raises(fixtures.FixtureError, match="trefoil"):
        fixtures.load_manifest(tmp_path / "manifest.json")


def test_identify_resolutions():
    fig8 = fixtures.get("figure_eight").pd()
    names = [fixtures.identify(resolve(fig8, 0, c)).name for c in Resolution]
    assert names == ["hopf", "trefoil"]
    clasp = fixtures.get("clasp").pd()
    assert [fixtures.identify(resolve(clasp, 0, c)).name for c in Resolution] == ["unknot", "unlink2"]


def test_resolve_path():
    assert fixtures.resolve_path("trefoil", ".pd").name == "trefoil.pd"
    with pytest.raises(FileNotFoundError):
        fixtures.resolve_path("no_such_thing", ".pd")
