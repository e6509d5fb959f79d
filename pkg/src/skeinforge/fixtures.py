"""Shipped PD and grid fixtures, and the manifest that ties them together."""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .determinant import determinant, kauffman_bracket
from .diagram import PlanarDiagram, components, mirror, parse_pd, simplify
from .grid import (
    BigradedRanks,
    GridDiagram,
    alexander_at_minus_one,
    grid_components,
    hfk_hat_rank,
    tilde_homology,
)


class FixtureError(ValueError):
    pass


def fixture_dir() -> Path:
    return Path(str(resources.files("skeinforge") / "fixtures"))


@functools.lru_cache(maxsize=None)
def cached_homology(g: GridDiagram) -> BigradedRanks:
    return tilde_homology(g)


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    pd_path: str | None
    grid_path: str | None
    expected: dict

    def pd(self) -> PlanarDiagram:
        if not self.pd_path:
            raise FixtureError(f"{self.name} has no PD file")
        return parse_pd((fixture_dir() / self.pd_path).read_text())

    def grid(self) -> GridDiagram:
        if not self.grid_path:
            raise FixtureError(f"{self.name} has no grid file")
        return GridDiagram.parse((fixture_dir() / self.grid_path).read_text())

    @property
    def has_both(self) -> bool:
        return bool(self.pd_path and self.grid_path)

    def hfk_rank(self) -> int:
        g = self.grid()
        return hfk_hat_rank(g, cached_homology(g))

    def det_from_grid(self) -> int:
        g = self.grid()
        return alexander_at_minus_one(g, cached_homology(g))


def check_entry(entry: FixtureEntry) -> list[str]:
    """Cross-module agreement for one entry; returns the list of problems."""
    problems = []
    exp = entry.expected
    if entry.pd_path:
        pd = entry.pd()
        det = determinant(pd)
        if det != exp["det"]:
            problems.append(f"{entry.name}: Goeritz det {det} != expected {exp['det']}")
        if components(pd) != exp["components"]:
            problems.append(f"{entry.name}: PD has {components(pd)} components, expected {exp['components']}")
    if entry.grid_path:
        g = entry.grid()
        if grid_components(g) != exp["components"]:
            problems.append(f"{entry.name}: grid has {grid_components(g)} components")
        chi_det = entry.det_from_grid()
        if chi_det != exp["det"]:
            problems.append(f"{entry.name}: grid Euler characteristic gives det {chi_det}, expected {exp['det']}")
        if "hfk_rank" in exp and entry.hfk_rank() != exp["hfk_rank"]:
            problems.append(f"{entry.name}: grid rank {entry.hfk_rank()} != expected {exp['hfk_rank']}")
    return problems


@functools.lru_cache(maxsize=4)
def _load(path: str, validate: bool) -> tuple[FixtureEntry, ...]:
    data = json.loads(Path(path).read_text())
    entries = tuple(
        FixtureEntry(e["name"], e.get("pd_path"), e.get("grid_path"), dict(e["expected"]))
        for e in sorted(data["entries"], key=lambda e: e["name"])
    )
    if validate:
        problems = [p for e in entries for p in check_entry(e)]
        if problems:
            raise FixtureError("; ".join(problems))
    return entries


def load_manifest(path: str | Path | None = None, validate: bool = True) -> list[FixtureEntry]:
    """Entries sorted by name.  With ``validate`` every entry is cross-checked
    (Goeritz determinant, grid Euler characteristic, expected values)."""
    path = Path(path) if path else fixture_dir() / "manifest.json"
    return list(_load(str(path), validate))


def get(name: str, validate: bool = False) -> FixtureEntry:
    for e in load_manifest(validate=validate):
        if e.name == name:
            return e
    raise FixtureError(f"no fixture named {name!r}")


def resolve_path(arg: str, suffix: str) -> Path:
    """A file path, or the name of a shipped fixture."""
    p = Path(arg)
    if p.exists():
        return p
    candidate = fixture_dir() / f"{arg}{suffix}"
    if candidate.exists():
        return candidate
    candidate = fixture_dir() / arg
    if candidate.exists():
        return candidate
    raise FileNotFoundError(arg)


def bracket_signature(pd: PlanarDiagram) -> tuple:
    """Kauffman bracket up to multiplication by +-A^k and A -> 1/A.

    Equal for a link and its mirror; used only to match a resolved diagram to
    a fixture that already agrees in component count and determinant.
    """
    bracket = kauffman_bracket(pd)
    forms = []
    for sign in (1, -1):
        items = sorted((sign * e, v) for e, v in bracket.items())
        low, lead = items[0][0], items[0][1]
        s = 1 if lead > 0 else -1
        forms.append(tuple((e - low, s * v) for e, v in items))
    return min(forms)


def identify(pd: PlanarDiagram, candidates: list[FixtureEntry] | None = None) -> FixtureEntry | None:
    """The fixture with a grid that presents the same link type as ``pd``, if any."""
    pd = simplify(pd)
    l, det = components(pd), determinant(pd)
    sig = bracket_signature(pd)
    pool = candidates or load_manifest(validate=False)
    # entries whose grid was drawn for them come before entries borrowing one
    pool = sorted(pool, key=lambda e: Path(e.grid_path or "").stem != e.name)
    for e in pool:
        if not e.has_both or e.expected["components"] != l or e.expected["det"] != det:
            continue
        other = e.pd()
        if bracket_signature(other) == sig or bracket_signature(mirror(other)) == sig:
            return e
    return None
