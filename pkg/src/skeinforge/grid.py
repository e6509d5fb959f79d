"""
Combinatorial knot Floer homology from grid diagrams (tilde flavour).

Conventions.  Row ``i`` of an ``n x n`` grid holds an O in column
``sigma_O[i]`` and an X in column ``sigma_X[i]``; markings sit at cell
centres ``(col + 1/2, row + 1/2)``.  A grid state is a permutation ``x``
whose points are the lattice points ``(i, x[i])``.  The differential counts
empty rectangles whose lower-left and upper-right corners are in the
source state; "empty" means no O, no X and no state point in the interior.

Coordinates are doubled internally so every point is an integer pair.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

DEFAULT_MAX_GRID = 8


class GridError(ValueError):
    pass


def max_grid_size() -> int:
    return int(os.environ.get("SKEINFORGE_MAX_GRID", DEFAULT_MAX_GRID))


@dataclass(frozen=True)
class GridDiagram:
    n: int
    sigma_O: tuple[int, ...]
    sigma_X: tuple[int, ...]

    def __post_init__(self):
        o, x = tuple(self.sigma_O), tuple(self.sigma_X)
        object.__setattr__(self, "sigma_O", o)
        object.__setattr__(self, "sigma_X", x)
        for name, perm in (("O", o), ("X", x)):
            if sorted(perm) != list(range(self.n)):
                raise GridError(f"{name} markings are not a permutation of 0..{self.n - 1}")
        if any(a == b for a, b in zip(o, x)):
            raise GridError("an O and an X share a cell")

    @classmethod
    def parse(cls, text: str) -> "GridDiagram":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.startswith("#")]
        if len(lines) != 3:
            raise GridError("grid file needs three lines: n, O: ..., X: ...")
        n = int(lines[0])
        cols = {}
        for ln in lines[1:]:
            key, _, rest = ln.partition(":")
            cols[key.strip().upper()] = tuple(int(v) for v in rest.replace(" ", "").split(",") if v)
        if set(cols) != {"O", "X"}:
            raise GridError("grid file needs an O: line and an X: line")
        return cls(n, cols["O"], cols["X"])

    def dump(self) -> str:
        return f"{self.n}\nO: {','.join(map(str, self.sigma_O))}\nX: {','.join(map(str, self.sigma_X))}\n"


def grid_components(g: GridDiagram) -> int:
    """Cycles of row -> (row of the O in the column of this row's X)."""
    o_row_of_col = {c: r for r, c in enumerate(g.sigma_O)}
    seen = set()
    count = 0
    for r in range(g.n):
        if r in seen:
            continue
        count += 1
        while r not in seen:
            seen.add(r)
            r = o_row_of_col[g.sigma_X[r]]
    return count


def stabilize(g: GridDiagram, row: int) -> GridDiagram:
    """Grid of size n+1 presenting the same link (stabilisation at an X).

    The X in ``row`` (column c) becomes an X at (row, c+1), an O at
    (row+1, c+1) and an X at (row+1, c).
    """
    c = g.sigma_X[row]

    def col(v):
        return v + 1 if v > c else v

    o, x = [], []
    for r in range(g.n):
        o.append(col(g.sigma_O[r]))
        x.append(c + 1 if r == row else col(g.sigma_X[r]))
        if r == row:
            o.append(c + 1)
            x.append(c)
    return GridDiagram(g.n + 1, tuple(o), tuple(x))


# -- gradings ------------------------------------------------------------------


def _count_lower_left(p, q) -> int:
    return sum(1 for a in p for b in q if a[0] < b[0] and a[1] < b[1])


def _marking_points(cols: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(2 * c + 1, 2 * r + 1) for r, c in enumerate(cols)]


class _Grader:
    """Maslov and doubled Alexander gradings of states.

    M_O(x) = J(x,x) - 2J(x,O) + J(O,O) + 1 with J(P,Q) = (I(P,Q)+I(Q,P))/2,
    and A(x) = (M_O(x) - M_X(x) - (n-1)) / 2.
    """

    def __init__(self, g: GridDiagram):
        self.n = g.n
        self.O = _marking_points(g.sigma_O)
        self.X = _marking_points(g.sigma_X)
        self.oo = _count_lower_left(self.O, self.O)
        self.xx = _count_lower_left(self.X, self.X)
        # per lattice point, number of markings strictly up-right / down-left of it
        n2 = 2 * g.n
        self.o_above = [[0] * n2 for _ in range(n2)]
        self.o_below = [[0] * n2 for _ in range(n2)]
        self.x_above = [[0] * n2 for _ in range(n2)]
        self.x_below = [[0] * n2 for _ in range(n2)]
        for i in range(g.n):
            for j in range(g.n):
                p = (2 * i, 2 * j)
                self.o_above[i][j] = sum(1 for q in self.O if p[0] < q[0] and p[1] < q[1])
                self.o_below[i][j] = sum(1 for q in self.O if q[0] < p[0] and q[1] < p[1])
                self.x_above[i][j] = sum(1 for q in self.X if p[0] < q[0] and p[1] < q[1])
                self.x_below[i][j] = sum(1 for q in self.X if q[0] < p[0] and q[1] < p[1])

    def gradings(self, x: tuple[int, ...]) -> tuple[int, int]:
        """(Maslov, 2 * Alexander)."""
        n = self.n
        ixx = 0
        for i in range(n):
            xi = x[i]
            for j in range(i + 1, n):
                if xi < x[j]:
                    ixx += 1
        mix_o = sum(self.o_above[i][x[i]] + self.o_below[i][x[i]] for i in range(n))
        mix_x = sum(self.x_above[i][x[i]] + self.x_below[i][x[i]] for i in range(n))
        m_o = ixx - mix_o + self.oo + 1
        m_x = ixx - mix_x + self.xx + 1
        return m_o, m_o - m_x - (n - 1)


def maslov_grading(g: GridDiagram, x) -> int:
    return _Grader(g).gradings(tuple(x))[0]


def alexander_grading(g: GridDiagram, x) -> Fraction:
    return Fraction(_Grader(g).gradings(tuple(x))[1], 2)


# -- rectangles ----------------------------------------------------------------


def _marking_free_table(g: GridDiagram) -> dict:
    """free[(c1, w, r1, h)] is True when that torus rectangle has no marking."""
    n = g.n
    cells = set()
    for r in range(n):
        cells.add((g.sigma_O[r], r))
        cells.add((g.sigma_X[r], r))
    table = {}
    for c1 in range(n):
        for w in range(1, n):
            for r1 in range(n):
                for h in range(1, n):
                    table[(c1, w, r1, h)] = not any(
                        ((c1 + a) % n, (r1 + b) % n) in cells for a in range(w) for b in range(h)
                    )
    return table


def _candidate_rectangles(n: int, x, i: int, j: int):
    """The two torus rectangles from x that swap columns i < j: (c1, w, r1, h)."""
    yield i, j - i, x[i], (x[j] - x[i]) % n
    yield j, n - (j - i), x[j], (x[i] - x[j]) % n


def _interior_has_point(n: int, x, c1: int, w: int, r1: int, h: int) -> bool:
    for a in range(1, w):
        if 0 < (x[(c1 + a) % n] - r1) % n < h:
            return True
    return False


def count_empty_rectangles(g: GridDiagram, x, y, _free=None) -> int:
    """Number of empty rectangles from state x to state y."""
    x, y = tuple(x), tuple(y)
    diff = [i for i in range(g.n) if x[i] != y[i]]
    if len(diff) != 2:
        return 0
    i, j = diff
    if x[i] != y[j] or x[j] != y[i]:
        return 0
    free = _free if _free is not None else _marking_free_table(g)
    count = 0
    for c1, w, r1, h in _candidate_rectangles(g.n, x, i, j):
        if free[(c1, w, r1, h)] and not _interior_has_point(g.n, x, c1, w, r1, h):
            count += 1
    return count


# -- the complex and its homology ---------------------------------------------


@dataclass
class BigradedRanks:
    ranks: dict[tuple[int, Fraction], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def rows(self) -> list[list]:
        out = []
        for (m, a), r in sorted(self.ranks.items()):
            out.append([m, int(a) if a.denominator == 1 else float(a), r])
        return out

    def euler_characteristic(self) -> dict[int, int]:
        """{2A: sum of (-1)^M rank} -- a Laurent polynomial in t^(1/2)."""
        chi: dict[int, int] = defaultdict(int)
        for (m, a), r in self.ranks.items():
            chi[int(2 * a)] += (-1) ** (m % 2) * r
        return {k: v for k, v in sorted(chi.items()) if v}


def _gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                rank += 1
                break
    return rank


@dataclass
class GridComplex:
    grid: GridDiagram
    states: list[tuple[int, ...]]
    grading: list[tuple[int, int]]
    boundary: list[list[int]]

    def boundary_squared_is_zero(self) -> bool:
        for src in range(len(self.states)):
            acc: dict[int, int] = defaultdict(int)
            for mid in self.boundary[src]:
                for dst in self.boundary[mid]:
                    acc[dst] ^= 1
            if any(acc.values()):
                return False
        return True


def build_complex(g: GridDiagram) -> GridComplex:
    """All n! states with their gradings and mod-2 boundary lists.

    Raises if some empty rectangle fails to drop Maslov grading by one or
    changes the Alexander grading.
    """
    if g.n > max_grid_size():
        raise GridError(f"grid size {g.n} exceeds limit {max_grid_size()} (set SKEINFORGE_MAX_GRID)")
    n = g.n
    states = list(permutations(range(n)))
    index = {s: k for k, s in enumerate(states)}
    grader = _Grader(g)
    grading = [grader.gradings(s) for s in states]
    free = _marking_free_table(g)
    boundary = []
    for k, x in enumerate(states):
        targets: dict[int, int] = {}
        for i in range(n):
            for j in range(i + 1, n):
                for c1, w, r1, h in _candidate_rectangles(n, x, i, j):
                    if not free[(c1, w, r1, h)] or _interior_has_point(n, x, c1, w, r1, h):
                        continue
                    y = list(x)
                    y[i], y[j] = y[j], y[i]
                    t = index[tuple(y)]
                    targets[t] = targets.get(t, 0) ^ 1
        out = [t for t, v in targets.items() if v]
        m, a2 = grading[k]
        for t in out:
            if grading[t] != (m - 1, a2):
                raise GridError(
                    f"rectangle {x} -> {states[t]} changes gradings {grading[k]} -> {grading[t]}"
                )
        boundary.append(out)
    return GridComplex(g, states, grading, boundary)


def tilde_homology(g: GridDiagram, check_d2: bool = True) -> BigradedRanks:
    cx = build_complex(g)
    if check_d2 and not cx.boundary_squared_is_zero():
        raise GridError("boundary map does not square to zero")
    blocks: dict[tuple[int, int], list[int]] = defaultdict(list)
    for k, gr in enumerate(cx.grading):
        blocks[gr].append(k)
    local = {}
    for gr, members in blocks.items():
        for pos, k in enumerate(members):
            local[k] = pos
    # rank of d: C_{M,A} -> C_{M-1,A}
    drank: dict[tuple[int, int], int] = {}
    for gr, members in blocks.items():
        rows = []
        for k in members:
            bits = 0
            for t in cx.boundary[k]:
                bits |= 1 << local[t]
            rows.append(bits)
        drank[gr] = _gf2_rank(rows)
    ranks = {}
    for (m, a2), members in blocks.items():
        h = len(members) - drank[(m, a2)] - drank.get((m + 1, a2), 0)
        if h:
            ranks[(m, Fraction(a2, 2))] = h
    return BigradedRanks(ranks)


def hfk_hat_rank(g: GridDiagram, homology: BigradedRanks | None = None) -> int:
    """Total tilde rank with the 2^(n-l) copies of V divided out."""
    homology = homology or tilde_homology(g)
    factor = 2 ** (g.n - grid_components(g))
    total = homology.total
    if total % factor:
        raise GridError(f"tilde rank {total} is not divisible by 2^(n-l) = {factor}")
    return total // factor


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients); den monic at top."""
    num = list(num)
    if not any(num):
        return [0]
    dl = len(den) - 1
    lead = den[-1]
    if abs(lead) != 1:
        raise GridError("divisor must have unit leading coefficient")
    q = [0] * max(len(num) - dl, 1)
    for k in range(len(num) - 1, dl - 1, -1):
        coef = num[k] * lead
        if coef:
            q[k - dl] = coef
            for j, dj in enumerate(den):
                num[k - dl + j] -= coef * dj
    if any(num):
        raise GridError("Euler characteristic is not divisible by (1 - t^-1)^(n-1)")
    return q


def alexander_polynomial(g: GridDiagram, homology: BigradedRanks | None = None) -> dict[int, int]:
    """Delta_L as {2 * exponent of t: coefficient}, up to sign and powers of t^(1/2).

    Divides the graded Euler characteristic by (1 - t^-1)^(n-1).
    """
    homology = homology or tilde_homology(g)
    chi = homology.euler_characteristic()
    if not chi:
        return {}
    low = min(chi)
    num = [0] * (max(chi) - low + 1)
    for e, v in chi.items():
        num[e - low] = v
    # (1 - t^-1)^(n-1) = s^{-2(n-1)} (s^2 - 1)^(n-1) with s = t^(1/2)
    den = [1]
    for _ in range(g.n - 1):
        nxt = [0] * (len(den) + 2)
        for i, c in enumerate(den):
            nxt[i + 2] += c
            nxt[i] -= c
        den = nxt
    q = _poly_divide(num, den)
    shift = low + 2 * (g.n - 1)
    out = {i + shift: c for i, c in enumerate(q) if c}
    return out


def alexander_at_minus_one(g: GridDiagram, homology: BigradedRanks | None = None) -> int:
    """|Delta_L(-1)| from the graded Euler characteristic."""
    delta = alexander_polynomial(g, homology)
    if not delta:
        return 0
    parities = {e % 2 for e in delta}
    if len(parities) != 1:
        raise GridError("Alexander polynomial mixes integer and half-integer powers")
    # s = t^(1/2) = i at t = -1
    re = im = 0
    for e, c in delta.items():
        k = e % 4
        if k == 0:
            re += c
        elif k == 1:
            im += c
        elif k == 2:
            re -= c
        else:
            im -= c
    value = math.isqrt(re * re + im * im)
    assert value * value == re * re + im * im
    return value


@dataclass
class HFKReport:
    n: int
    l: int
    tilde_total: int
    hfk_rank: int
    bigraded: list
    det_from_chi: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "tilde_total": self.tilde_total,
            "hfk_rank": self.hfk_rank,
            "bigraded": self.bigraded,
            "det_from_chi": self.det_from_chi,
        }


def hfk_report(g: GridDiagram) -> HFKReport:
    h = tilde_homology(g)
    return HFKReport(
        n=g.n,
        l=grid_components(g),
        tilde_total=h.total,
        hfk_rank=hfk_hat_rank(g, h),
        bigraded=h.rows(),
        det_from_chi=alexander_at_minus_one(g, h),
    )
