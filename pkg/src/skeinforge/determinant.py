"""
Link determinants, computed two ways.

``determinant`` uses the Goeritz matrix of a checkerboard shading and a
fraction-free (Bareiss) integer determinant.  ``kauffman_det`` sums the
Kauffman bracket over all smoothing states and evaluates it at a primitive
eighth root of unity in exact cyclotomic arithmetic.  The two routes share
nothing beyond the PD data structure.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from .diagram import (
    DiagramError,
    PlanarDiagram,
    faces,
    is_connected,
)

MAX_STATE_SUM_CROSSINGS = 26

WHITE, BLACK = 0, 1


@dataclass(frozen=True)
class CheckerboardShading:
    faces: tuple
    face_color: tuple[int, ...]

    @property
    def white(self) -> list[int]:
        return [i for i, c in enumerate(self.face_color) if c == WHITE]

    @property
    def black(self) -> list[int]:
        return [i for i, c in enumerate(self.face_color) if c == BLACK]


def _face_lookup(fs) -> dict:
    where = {}
    for k, face in enumerate(fs):
        for dart in face:
            where[dart] = k
    return where


def checkerboard(pd: PlanarDiagram) -> CheckerboardShading:
    """2-colour the faces so that the unbounded face (index 0) is white."""
    if not pd.crossings or not is_connected(pd):
        raise DiagramError("checkerboard shading needs a connected diagram with crossings")
    fs = faces(pd)
    where = _face_lookup(fs)
    adj = defaultdict(set)
    for d0, d1 in pd.darts_of().values():
        # the two sides of an edge are the faces of its two darts
        a, b = where[d0], where[d1]
        if a == b:
            raise DiagramError("edge with the same face on both sides")
        adj[a].add(b)
        adj[b].add(a)
    color = [-1] * len(fs)
    color[0] = WHITE
    stack = [0]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if color[g] == -1:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise DiagramError("faces are not 2-colourable: PD code is not planar")
    return CheckerboardShading(tuple(fs), tuple(color))


def goeritz_matrix(pd: PlanarDiagram, exclude: int | None = None) -> list[list[int]]:
    """Goeritz matrix over the white faces, with one white face removed.

    A crossing whose white corners are the ones reached counterclockwise from
    an under-strand counts +1, otherwise -1.  ``exclude`` picks the removed
    white face (by face index); default is the unbounded face.
    """
    shade = checkerboard(pd)
    where = _face_lookup(shade.faces)
    white = shade.white
    pos = {f: i for i, f in enumerate(white)}
    full = [[0] * len(white) for _ in white]
    for ci in range(len(pd.crossings)):
        corner = [where[(ci, (j + 1) % 4)] for j in range(4)]
        if shade.face_color[corner[0]] == WHITE:
            eta, f, g = 1, corner[0], corner[2]
        else:
            eta, f, g = -1, corner[1], corner[3]
        if f == g:
            continue
        i, j = pos[f], pos[g]
        full[i][j] -= eta
        full[j][i] -= eta
        full[i][i] += eta
        full[j][j] += eta
    drop = pos[0 if exclude is None else exclude]
    keep = [i for i in range(len(white)) if i != drop]
    return [[full[i][j] for j in keep] for i in keep]


def bareiss_det(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _split_or_trivial(pd: PlanarDiagram) -> int | None:
    if not pd.crossings:
        return 1 if pd.free_loops <= 1 else 0
    if not is_connected(pd):
        return 0
    return None


def determinant(pd: PlanarDiagram) -> int:
    """det(L) from the Goeritz matrix; 0 for split diagrams."""
    trivial = _split_or_trivial(pd)
    if trivial is not None:
        return trivial
    return abs(bareiss_det(goeritz_matrix(pd)))


# -- Kauffman bracket oracle ---------------------------------------------------

# Z[w] with w a primitive 8th root of unity: coefficients of 1, w, w^2, w^3 (w^4 = -1).
Cyclo8 = tuple[int, int, int, int]


def _cyclo_power(k: int) -> Cyclo8:
    k %= 8
    v = [0, 0, 0, 0]
    v[k % 4] = 1 if k < 4 else -1
    return tuple(v)


def _cyclo_mul(x: Cyclo8, y: Cyclo8) -> Cyclo8:
    out = [0, 0, 0, 0]
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            k = i + j
            if k >= 4:
                out[k - 4] -= a * b
            else:
                out[k] += a * b
    return tuple(out)


def _cyclo_conj(x: Cyclo8) -> Cyclo8:
    # w -> w^-1 = -w^3, w^2 -> -w^2, w^3 -> -w
    return (x[0], -x[3], -x[2], -x[1])


def kauffman_bracket(pd: PlanarDiagram) -> dict[int, int]:
    """Kauffman bracket as {exponent of A: coefficient}, normalised so <O> = 1.

    X[a,b,c,d] smooths to A * P[a,d] P[b,c] + A^-1 * P[a,b] P[c,d].
    """
    c = len(pd.crossings)
    if c > MAX_STATE_SUM_CROSSINGS:
        raise DiagramError(f"state sum limited to {MAX_STATE_SUM_CROSSINGS} crossings, got {c}")
    labels = pd.edges
    index = {a: i for i, a in enumerate(labels)}
    # (-A^2 - A^-2)^k expanded once per loop count
    delta_pow = {0: {0: 1}}
    total: dict[int, int] = defaultdict(int)
    for state in product((0, 1), repeat=c):
        parent = list(range(len(labels)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (a, b, cc, d), s in zip(pd.crossings, state):
            pairs = ((a, d), (b, cc)) if s == 0 else ((a, b), (cc, d))
            for p, q in pairs:
                ri, rj = find(index[p]), find(index[q])
                if ri != rj:
                    parent[ri] = rj
        loops = len({find(i) for i in range(len(labels))}) + pd.free_loops
        k = loops - 1
        if k not in delta_pow:
            for m in range(max(delta_pow) + 1, k + 1):
                prev = delta_pow[m - 1]
                cur: dict[int, int] = defaultdict(int)
                for e, v in prev.items():
                    cur[e + 2] -= v
                    cur[e - 2] -= v
                delta_pow[m] = dict(cur)
        shift = state.count(0) - state.count(1)
        for e, v in delta_pow[k].items():
            total[e + shift] += v
    return {e: v for e, v in sorted(total.items()) if v}


def kauffman_det(pd: PlanarDiagram) -> int:
    """|<L>| at A = exp(i pi/4), which equals |V_L(-1)| = det(L)."""
    if not pd.crossings and pd.free_loops == 0:
        return 1
    value = (0, 0, 0, 0)
    for e, v in kauffman_bracket(pd).items():
        w = _cyclo_power(e)
        value = tuple(s + v * t for s, t in zip(value, w))
    norm = _cyclo_mul(value, _cyclo_conj(value))
    # a real element a + b*sqrt2 has w^2-part 0 and w^3-part = -(w-part)
    if norm[2] != 0 or norm[1] != -norm[3]:
        raise ArithmeticError(f"bracket norm {norm} is not real")
    if norm[1] != 0:
        raise ArithmeticError(f"bracket norm {norm} is irrational")
    root = math.isqrt(norm[0])
    if root * root != norm[0]:
        raise ArithmeticError(f"bracket norm {norm[0]} is not a square")
    return root

