import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import alexander_from_winding, gf2_rank, normalize, torus_rectangles
from skeinforge import fixtures
from skeinforge.grid import (
    GridDiagram,
    GridError,
    alexander_at_minus_one,
    alexander_grading,
    alexander_polynomial,
    build_complex,
    count_empty_rectangles,
    grid_components,
    hfk_hat_rank,
    hfk_report,
    maslov_grading,
    stabilize,
    tilde_homology,
)


def shift_grid(n, q):
    return GridDiagram(n, tuple(range(n)), tuple((r + q) % n for r in range(n)))


UNKNOT = shift_grid(2, 1)
HOPF = shift_grid(4, 2)
TREFOIL = shift_grid(5, 2)


@st.composite
def grids(draw, low=2, high=5):
    n = draw(st.integers(low, high))
    o = draw(st.permutations(range(n)))
    x = draw(st.permutations(range(n)))
    assume(all(a != b for a, b in zip(o, x)))
    return GridDiagram(n, tuple(o), tuple(x))


def poly_from_grid(g):
    delta = alexander_polynomial(g)
    if not delta:
        return []
    low, high = min(delta), max(delta)
    return normalize([delta.get(e, 0) for e in range(low, high + 1, 2)])


def oracle_total(g):
    """Total tilde rank from the brute-force rectangle counts."""
    states = list(itertools.permutations(range(g.n)))
    rows = [[torus_rectangles(g.n, g.sigma_O, g.sigma_X, x, y) % 2 for y in states] for x in states]
    return len(states) - 2 * gf2_rank(rows)


def test_components():
    assert grid_components(UNKNOT) == 1
    assert grid_components(TREFOIL) == 1
    assert grid_components(HOPF) == 2
    assert grid_components(GridDiagram(4, (0, 1, 2, 3), (1, 0, 3, 2))) == 2


def test_unknot_2x2():
    states = [(0, 1), (1, 0)]
    for x in states:
        for y in states:
            assert count_empty_rectangles(UNKNOT, x, y) == 0
    h = tilde_homology(UNKNOT)
    assert h.total == 2 and hfk_hat_rank(UNKNOT) == 1
    assert h.ranks == {(0, Fraction(0)): 1, (-1, Fraction(-1)): 1}
    assert alexander_at_minus_one(UNKNOT) == 1


def test_gradings_on_unknot_states():
    # (0,1) sits on the O's: J(x,x) = 1, J(x,O) = 2, J(O,O) = 1, so M = -1
    assert (maslov_grading(UNKNOT, (0, 1)), alexander_grading(UNKNOT, (0, 1))) == (-1, -1)
    assert (maslov_grading(UNKNOT, (1, 0)), alexander_grading(UNKNOT, (1, 0))) == (0, 0)


@pytest.mark.parametrize(
    "grid, total, rank, det",
    [(UNKNOT, 2, 1, 1), (HOPF, 16, 4, 2), (TREFOIL, 48, 3, 3)],
)
def test_small_grid_totals(grid, total, rank, det):
    h = tilde_homology(grid)
    assert h.total == total == oracle_total(grid)
    assert hfk_hat_rank(grid, h) == rank
    assert alexander_at_minus_one(grid, h) == det


def test_trefoil_bigraded_is_thin_and_symmetric():
    h = tilde_homology(TREFOIL)
    # HFK of a trefoil tensored with four copies of V; one diagonal only
    assert {m - a for m, a in h.ranks} == {1}
    assert sorted(h.rows()) == [[-4, -5, 1], [-3, -4, 5], [-2, -3, 11], [-1, -2, 14], [0, -1, 11], [1, 0, 5], [2, 1, 1]]


EXPECTED = {
    # name: (n, hfk rank, |Delta(-1)|, Alexander coefficients up to units)
    "unknot": (2, 1, 1, [1]),
    "hopf": (4, 4, 2, [1, -1]),
    "trefoil": (5, 3, 3, [1, -1, 1]),
    "figure_eight": (6, 5, 5, [-1, 3, -1]),
    "knot_5_1": (7, 5, 5, [1, -1, 1, -1, 1]),
    "knot_5_2": (7, 7, 7, [2, -3, 2]),
    "knot_8_19": (7, 5, 3, [1, -1, 0, 1, 0, -1, 1]),
    "knot_8_20": (8, 9, 9, [1, -2, 3, -2, 1]),
    "unlink2": (4, 2, 0, []),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_grids(name):
    n, rank, det, alex = EXPECTED[name]
    g = fixtures.get(name).grid()
    assert g.n == n
    h = fixtures.cached_homology(g)
    assert hfk_hat_rank(g, h) == rank
    assert alexander_at_minus_one(g, h) == det
    assert alexander_from_winding(g.n, g.sigma_O, g.sigma_X) == alex
    assert poly_from_grid(g) == alex


def test_report_json_shape():
    rep = hfk_report(HOPF).to_json()
    assert set(rep) == {"n", "l", "tilde_total", "hfk_rank", "bigraded", "det_from_chi"}
    assert rep["l"] == 2 and rep["hfk_rank"] == 4
    assert sum(r for _, _, r in rep["bigraded"]) == rep["tilde_total"]


@pytest.mark.parametrize("name", ["trefoil", "figure_eight"])
def test_stabilization_preserves_rank(name):
    g = fixtures.get(name).grid()
    rank = hfk_hat_rank(g)
    for row in range(g.n):
        s = stabilize(g, row)
        assert s.n == g.n + 1
        assert hfk_hat_rank(s) == rank
        assert poly_from_grid(s) == poly_from_grid(g)


def test_parse_and_dump():
    g = GridDiagram.parse("5\nO: 0,1,2,3,4\nX: 2,3,4,0,1\n")
    assert g == TREFOIL and GridDiagram.parse(g.dump()) == g
    with pytest.raises(GridError):
        GridDiagram.parse("3\nO: 0,1,2\nX: 0,2,1\n")  # shared cell
    with pytest.raises(GridError):
        GridDiagram.parse("3\nO: 0,1,1\nX: 1,2,0\n")
    with pytest.raises(GridError):
        GridDiagram.parse("3\nO: 0,1,2\n")


def test_size_cap(monkeypatch):
    monkeypatch.setenv("SKEINFORGE_MAX_GRID", "4")
    with pytest.raises(GridError):
        tilde_homology(TREFOIL)
    monkeypatch.setenv("SKEINFORGE_MAX_GRID", "5")
    assert tilde_homology(TREFOIL).total == 48


def test_boundary_squares_to_zero_on_fixtures():
    for name in ("hopf", "trefoil", "figure_eight", "unlink2"):
        assert build_complex(fixtures.get(name).grid()).boundary_squared_is_zero()


@settings(max_examples=60, deadline=None)
@given(grids(2, 5), st.data())
def test_rectangle_counts_match_brute_force(g, data):
    x = data.draw(st.permutations(range(g.n)))
    i, j = sorted(data.draw(st.lists(st.integers(0, g.n - 1), min_size=2, max_size=2, unique=True)))
    y = list(x)
    y[i], y[j] = y[j], y[i]
    assert count_empty_rectangles(g, x, y) == torus_rectangles(g.n, g.sigma_O, g.sigma_X, x, y)
    assert count_empty_rectangles(g, x, x) == 0


@settings(max_examples=40, deadline=None)
@given(grids(2, 5))
def test_random_grid_homology(g):
    h = tilde_homology(g)
    assert h.total == oracle_total(g)
    l = grid_components(g)
    assert h.total % 2 ** (g.n - l) == 0
    rank = hfk_hat_rank(g, h)
    assert poly_from_grid(g) == alexander_from_winding(g.n, g.sigma_O, g.sigma_X)
    det = alexander_at_minus_one(g, h)
    # lower bound 2^(l-1) det <= rk HFK holds for every link
    assert 2 ** (l - 1) * det <= rank
