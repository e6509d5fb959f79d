import json
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import braid_diagram, braid_words
from skeinforge.diagram import components
from skeinforge.heegaard import (
    INTERSECTIONS,
    CurveReplacement,
    HeegaardCounts,
    HeegaardError,
    SpecialHeegaardDiagram,
    Variant,
    build,
    expected_counts,
    random_marked_edges,
    reduce_to_resolution,
    replace_for_resolution,
    unbounded_edges,
    validate,
)


def counts(d):
    return (d.genus, d.k, len(d.alpha_curves), len(d.beta_curves), len(d.punctures))


def test_hopf_with_two_ladybugs(pds):
    d = build(pds["hopf"], [3, 4])
    assert counts(d) == (3, 2, 5, 5, 6)
    assert validate(d).ok
    kinds = sorted(b.kind for b in d.beta_curves)
    assert kinds == ["crossing", "crossing", "ladybug_beta", "ladybug_beta", "meridian"]
    assert sum(a.kind == "region" for a in d.alpha_curves) == 3


def test_clasp_and_trefoil(pds):
    assert counts(build(pds["clasp"], [])) == (3, 0, 3, 3, 2)
    assert counts(build(pds["trefoil"], [])) == (4, 0, 4, 4, 2)


def test_default_marks_are_minimal(pds):
    d = build(pds["hopf"])
    assert d.k == components(pds["hopf"]) - 1 == 1
    assert d.v_exponent == 0


def test_build_preconditions(pds):
    hopf = pds["hopf"]
    with pytest.raises(HeegaardError):
        build(hopf, [1, 2], e=1)  # second component uncovered
    with pytest.raises(HeegaardError):
        build(pds["unlink2"])
    inner = [a for a in pds["figure_eight"].edges if a not in unbounded_edges(pds["figure_eight"])]
    if inner:
        with pytest.raises(HeegaardError):
            build(pds["figure_eight"], [], e=inner[0])


@pytest.mark.parametrize("variant", list(Variant))
def test_replacement_keeps_counts_and_records_intersections(pds, variant):
    d = build(pds["clasp"], [])
    r = replace_for_resolution(d, CurveReplacement(0, variant))
    assert counts(r) == counts(d)
    assert validate(r).ok
    assert r.replacement["variant"] == variant.value
    pattern = r.replacement["intersections"]
    assert pattern == {k: list(v) for k, v in INTERSECTIONS.items()}
    assert all(len(points) == 2 for points in pattern.values())
    assert sum(b.kind == variant.value for b in r.beta_curves) == 1
    with pytest.raises(HeegaardError):
        replace_for_resolution(r, CurveReplacement(0, variant))


def test_reduction_bookkeeping(pds):
    d = build(pds["clasp"], [])
    r = replace_for_resolution(d, CurveReplacement(0, Variant.GAMMA))
    # the resolution has one crossing fewer, so its special diagram has genus c
    assert reduce_to_resolution(r) == expected_counts(1, 0)
    # two destabilisations bring the three-curve picture down to one alpha and one beta
    assert d.counts().destabilize(2) == HeegaardCounts(1, 1, 1, 2)
    with pytest.raises(HeegaardError):
        reduce_to_resolution(d)


def test_validate_reports_corruption(pds):
    d = build(pds["clasp"], [])
    bad = replace(d, punctures=d.punctures + ("extra",))
    assert any("2k+2 violated" in v for v in validate(bad).violations)
    h = build(pds["hopf"], [3, 4])
    no_ladybug_alpha = replace(h, alpha_curves=tuple(a for a in h.alpha_curves if a.name != "alpha_s0"))
    assert any("alpha count" in v for v in validate(no_ladybug_alpha).violations)
    broken = replace(h, pieces=h.pieces[:-1])
    assert not validate(broken).ok
    wrong_genus = replace(h, genus=4)
    assert not validate(wrong_genus).ok


def test_json_round_trip(pds):
    d = build(pds["hopf"], [3, 4])
    again = SpecialHeegaardDiagram.from_json(json.loads(json.dumps(d.to_json())))
    assert again == d and validate(again).ok


@settings(max_examples=50, deadline=None)
@given(braid_words(max_len=9), st.integers(0, 10_000))
def test_random_diagrams(ws, seed):
    pd = braid_diagram(ws)
    if pd.free_loops:
        return
    rng = random.Random(seed)
    e = rng.choice(unbounded_edges(pd))
    d = build(pd, random_marked_edges(pd, e, rng), e)
    c = len(pd.crossings)
    assert validate(d).ok
    assert d.counts() == expected_counts(c, d.k)
    # four-holed spheres and cylinders: chi = -2c = 2 - 2g
    assert sum(p.chi for p in d.pieces) == 2 - 2 * d.genus
    r = replace_for_resolution(d, CurveReplacement(rng.randrange(c), rng.choice(list(Variant))))
    assert validate(r).ok and r.counts() == d.counts()
