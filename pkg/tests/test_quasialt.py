import json

import pytest
from hypothesis import given, settings

from helpers import braid_diagram, braid_words
from skeinforge.determinant import determinant
from skeinforge.diagram import disjoint_union, parse_pd
from skeinforge.quasialt import (
    LeafKind,
    QACertificate,
    certify,
    certify_with_stats,
    leaf_kind,
    qa_obstruction,
    verify_certificate,
)
from skeinforge.scorecard import mutate_certificates

ALTERNATING = ("hopf", "trefoil", "figure_eight", "knot_5_1", "knot_5_2", "knot_6_1", "knot_6_2", "knot_6_3")


@pytest.mark.parametrize("name", ALTERNATING)
def test_alternating_fixtures_are_leaves(pds, name):
    cert, expansions = certify_with_stats(pds[name])
    assert cert.kind is LeafKind.ALTERNATING and expansions == 0
    assert verify_certificate(cert)


@pytest.mark.parametrize("name", ("unknot", "kink", "clasp"))
def test_unknot_diagrams_are_unknot_leaves(pds, name):
    assert leaf_kind(pds[name]) is LeafKind.UNKNOT


def test_8_20_certificate(pds):
    cert, expansions = certify_with_stats(pds["knot_8_20"], budget=100_000)
    assert cert is not None and not cert.is_leaf
    assert cert.dets[0] == 9 and cert.dets[0] == cert.dets[1] + cert.dets[2]
    assert expansions <= 100_000
    assert verify_certificate(cert)
    again = QACertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert again == cert and verify_certificate(again)


def test_8_19_is_never_certified(pds):
    pd = pds["knot_8_19"]
    assert certify(pd) is None
    # rk HFK = 5 from the 7x7 grid, det = 3
    assert qa_obstruction(1, 3, 5)
    assert not qa_obstruction(1, 3, 3)
    assert not qa_obstruction(2, 2, 4)


def test_split_links_are_not_certified(pds):
    assert certify(pds["unlink2"]) is None
    tref = pds["trefoil"]
    assert certify(disjoint_union(tref, tref)) is None


def test_budget(pds):
    with pytest.raises(ValueError):
        certify(pds["trefoil"], budget=0)
    assert certify(pds["knot_8_20"], budget=1) is None


def test_twenty_mutants_rejected(pds):
    cert = certify(pds["knot_8_20"])
    mutants = mutate_certificates(cert, 20, seed=11)
    assert len(mutants) == 20
    assert len({json.dumps(m.to_json(), sort_keys=True) for _, m in mutants}) == 20
    for desc, m in mutants:
        res = verify_certificate(m)
        assert not res, desc
        assert res.reason


def test_verify_reports_failing_path(pds):
    cert = certify(pds["knot_8_20"])
    bad = mutate_certificates(cert, 1)[0][1]  # det off by one somewhere
    res = verify_certificate(bad)
    assert not res.ok and isinstance(res.path, tuple)


def test_leaf_claims_checked(pds):
    assert not verify_certificate(QACertificate(pds["knot_8_19"], kind=LeafKind.ALTERNATING))
    assert not verify_certificate(QACertificate(pds["trefoil"], kind=LeafKind.UNKNOT))
    assert not verify_certificate(QACertificate(pds["unlink2"], kind=LeafKind.UNKNOT))
    assert verify_certificate(QACertificate(pds["clasp"], kind=LeafKind.UNKNOT))


@settings(max_examples=40, deadline=None)
@given(braid_words(max_strands=3, max_len=8))
def test_returned_certificates_always_verify(ws):
    pd = braid_diagram(ws)
    cert = certify(pd, budget=2_000)
    if cert is not None:
        assert verify_certificate(cert)
        assert determinant(pd) >= 1
