"""
Finite-dimensional homological algebra over GF(2).

Matrices act on column vectors: a map ``C -> D`` is a ``D.dim x C.dim``
uint8 array.  Complexes are ungraded; the differential is a single square
matrix with ``d @ d == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class HomalgError(ValueError):
    pass


def gf2(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) % 2


def matmul(a, b) -> np.ndarray:
    a, b = gf2(a), gf2(b)
    if a.shape[1] != b.shape[0]:
        raise HomalgError(f"shape mismatch {a.shape} @ {b.shape}")
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def row_reduce(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) and its pivot columns."""
    r = gf2(m).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    k = 0
    for col in range(cols):
        if k == rows:
            break
        hits = np.nonzero(r[k:, col])[0]
        if hits.size == 0:
            continue
        p = k + hits[0]
        if p != k:
            r[[k, p]] = r[[p, k]]
        for i in np.nonzero(r[:, col])[0]:
            if i != k:
                r[i] ^= r[k]
        pivots.append(col)
        k += 1
    return r, pivots


def rank(m) -> int:
    m = gf2(m)
    if m.size == 0:
        return 0
    return len(row_reduce(m)[1])


def nullspace(m) -> np.ndarray:
    """Basis of ker m, one vector per column."""
    m = gf2(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    r, pivots = row_reduce(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, p in enumerate(pivots):
            basis[p, j] = r[i, f]
    return basis


def solve(a, b) -> np.ndarray | None:
    """Some x with a @ x = b (columnwise), or None if inconsistent."""
    a, b = gf2(a), gf2(b)
    if b.ndim == 1:
        b = b[:, None]
    aug = np.concatenate([a, b], axis=1)
    r, pivots = row_reduce(aug)
    n = a.shape[1]
    if any(p >= n for p in pivots):
        return None
    x = zeros(n, b.shape[1])
    for i, p in enumerate(pivots):
        x[p] = r[i, n:]
    return x


def column_space(m) -> np.ndarray:
    """A basis (columns) of the image of m."""
    m = gf2(m)
    _, pivots = row_reduce(m)
    return m[:, pivots]


@dataclass(frozen=True, eq=False)
class ChainComplexF2:
    d: np.ndarray

    def __post_init__(self):
        d = gf2(self.d)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise HomalgError(f"differential must be square, got shape {d.shape}")
        if matmul(d, d).any():
            raise HomalgError("d @ d != 0")
        object.__setattr__(self, "d", d)

    @classmethod
    def zero(cls, dim: int) -> "ChainComplexF2":
        return cls(zeros(dim, dim))

    @property
    def dim(self) -> int:
        return self.d.shape[0]

    def to_json(self) -> dict:
        return {"dim": self.dim, "d": self.d.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "ChainComplexF2":
        dim = int(data["dim"])
        d = data.get("d") or zeros(dim, dim)
        c = cls(np.array(d, dtype=np.uint8).reshape(dim, dim))
        return c


def homology_rank(c: ChainComplexF2) -> int:
    return c.dim - 2 * rank(c.d)


@dataclass(frozen=True, eq=False)
class HomologyBasis:
    """Cycle representatives spanning H(C), plus a basis of the boundaries."""

    boundaries: np.ndarray
    reps: np.ndarray

    @property
    def rank(self) -> int:
        return self.reps.shape[1]

    def coordinates(self, cycles) -> np.ndarray:
        """Homology coordinates of cycles (columns) in terms of ``reps``."""
        basis = np.concatenate([self.reps, self.boundaries], axis=1)
        x = solve(basis, cycles)
        if x is None:
            raise HomalgError("vector is not a cycle")
        return x[: self.rank]


def homology_basis(c: ChainComplexF2) -> HomologyBasis:
    """Extend a boundary basis to a cycle basis; the extension spans H."""
    cycles = nullspace(c.d)
    bounds = column_space(c.d)
    # pivot order on [boundaries | cycles] picks the representatives
    stacked = np.concatenate([bounds, cycles], axis=1)
    _, pivots = row_reduce(stacked)
    reps = stacked[:, [p for p in pivots if p >= bounds.shape[1]]]
    return HomologyBasis(bounds, reps)


@dataclass(frozen=True, eq=False)
class ChainMapF2:
    source: ChainComplexF2
    target: ChainComplexF2
    m: np.ndarray

    def __post_init__(self):
        m = gf2(self.m).reshape(self.target.dim, self.source.dim)
        object.__setattr__(self, "m", m)
        if not np.array_equal(matmul(m, self.source.d), matmul(self.target.d, m)):
            raise HomalgError("not a chain map: m d != d m")


@dataclass(frozen=True, eq=False)
class HomotopyF2:
    source: ChainComplexF2
    target: ChainComplexF2
    h: np.ndarray

    def __post_init__(self):
        h = gf2(self.h)
        if h.shape != (self.target.dim, self.source.dim):
            raise HomalgError(f"homotopy shape {h.shape} != {(self.target.dim, self.source.dim)}")
        object.__setattr__(self, "h", h)


def induced_map(f: ChainMapF2, src: HomologyBasis | None = None, tgt: HomologyBasis | None = None) -> np.ndarray:
    """Matrix of f_* between the chosen homology bases."""
    src = src or homology_basis(f.source)
    tgt = tgt or homology_basis(f.target)
    if src.rank == 0:
        return zeros(tgt.rank, 0)
    return tgt.coordinates(matmul(f.m, src.reps))


def is_quasi_isomorphism(f: ChainMapF2) -> bool:
    star = induced_map(f)
    return star.shape[0] == star.shape[1] and rank(star) == star.shape[0]


@dataclass
class TriangleReport:
    homotopy_identity: list[bool] = field(default_factory=list)
    psi_chain_map: list[bool] = field(default_factory=list)
    psi_iso: list[bool] = field(default_factory=list)

    @property
    def condition1(self) -> bool:
        return all(self.homotopy_identity)

    @property
    def condition2(self) -> bool:
        return all(self.psi_chain_map) and all(self.psi_iso)

    @property
    def ok(self) -> bool:
        return self.condition1 and self.condition2

    def to_json(self) -> dict:
        return {
            "condition1": self.condition1,
            "condition2": self.condition2,
            "homotopy_identity": self.homotopy_identity,
            "psi_chain_map": self.psi_chain_map,
            "psi_iso": self.psi_iso,
        }


def _check_shapes(cs, fs, hs=None):
    if len(cs) != 3 or len(fs) != 3:
        raise HomalgError("need three complexes and three maps")
    for k in range(3):
        if fs[k].source is not cs[k] and fs[k].source.dim != cs[k].dim:
            raise HomalgError(f"f{k} does not start at C{k}")
        if fs[k].target.dim != cs[(k + 1) % 3].dim:
            raise HomalgError(f"f{k} does not end at C{(k + 1) % 3}")
        if hs is not None and hs[k].h.shape != (cs[(k + 2) % 3].dim, cs[k].dim):
            raise HomalgError(f"H{k} must map C{k} to C{(k + 2) % 3}")


def check_triangle_hypotheses(cs, fs, hs) -> TriangleReport:
    """Evaluate the two hypotheses of the exact-triangle lemma.

    (1) d_{k+2} H_k + H_k d_k = f_{k+1} f_k, and (2) psi_k = f_{k+2} H_k +
    H_{k+1} f_k is a chain map inducing an isomorphism on homology.
    """
    _check_shapes(cs, fs, hs)
    rep = TriangleReport()
    for k in range(3):
        k1, k2 = (k + 1) % 3, (k + 2) % 3
        lhs = matmul(cs[k2].d, hs[k].h) ^ matmul(hs[k].h, cs[k].d)
        rhs = matmul(fs[k1].m, fs[k].m)
        rep.homotopy_identity.append(bool(np.array_equal(lhs, rhs)))
        psi = matmul(fs[k2].m, hs[k].h) ^ matmul(hs[k1].h, fs[k].m)
        try:
            psi_map = ChainMapF2(cs[k], cs[k], psi)
        except HomalgError:
            rep.psi_chain_map.append(False)
            rep.psi_iso.append(False)
            continue
        rep.psi_chain_map.append(True)
        rep.psi_iso.append(is_quasi_isomorphism(psi_map))
    return rep


@dataclass
class ExactnessReport:
    homology_ranks: list[int]
    induced_ranks: list[int]
    exact_at: list[bool]

    @property
    def exact(self) -> bool:
        return all(self.exact_at)

    def __bool__(self) -> bool:
        return self.exact

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "exact_at": self.exact_at,
            "homology_ranks": self.homology_ranks,
            "induced_ranks": self.induced_ranks,
        }


def exactness_report(cs, fs) -> ExactnessReport:
    _check_shapes(cs, fs)
    bases = [homology_basis(c) for c in cs]
    stars = [induced_map(fs[k], bases[k], bases[(k + 1) % 3]) for k in range(3)]
    ranks = [rank(s) if s.size else 0 for s in stars]
    exact_at = []
    for k in range(3):
        incoming, outgoing = stars[(k - 1) % 3], stars[k]
        # im(in) = ker(out)  <=>  out . in = 0 and rk(in) + rk(out) = dim H
        composite_zero = not (incoming.size and outgoing.size and matmul(outgoing, incoming).any())
        exact_at.append(composite_zero and ranks[(k - 1) % 3] + ranks[k] == bases[k].rank)
    return ExactnessReport([b.rank for b in bases], ranks, exact_at)


def check_exactness(cs, fs) -> bool:
    return exactness_report(cs, fs).exact


# -- generators of test instances --------------------------------------------


def random_complex(rng: np.random.Generator, dim: int, max_pairs: int | None = None) -> ChainComplexF2:
    """A random complex: a few cancelling pairs, conjugated by a random basis change."""
    pairs = int(rng.integers(0, (dim // 2 if max_pairs is None else max_pairs) + 1))
    d = zeros(dim, dim)
    for i in range(pairs):
        d[2 * i + 1, 2 * i] = 1
    p = random_invertible(rng, dim)
    return ChainComplexF2(matmul(matmul(p, d), inverse(p)))


def random_invertible(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        m = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        if rank(m) == n:
            return m


def inverse(m) -> np.ndarray:
    m = gf2(m)
    x = solve(m, identity(m.shape[0]))
    if x is None:
        raise HomalgError("matrix is singular")
    return x


def chain_map_space(src: ChainComplexF2, tgt: ChainComplexF2) -> list[np.ndarray]:
    """A basis of all chain maps src -> tgt (as target x source matrices)."""
    n, m = tgt.dim, src.dim
    # linear map vec(F) -> vec(F d_src + d_tgt F), with F flattened row-major
    cols = []
    for idx in range(n * m):
        f = zeros(n, m)
        f.flat[idx] = 1
        cols.append((matmul(f, src.d) ^ matmul(tgt.d, f)).ravel())
    system = np.stack(cols, axis=1) if cols else zeros(0, 0)
    if n * m == 0:
        return []
    basis = nullspace(system)
    return [basis[:, j].reshape(n, m) for j in range(basis.shape[1])]


def random_chain_map(rng: np.random.Generator, src: ChainComplexF2, tgt: ChainComplexF2) -> ChainMapF2:
    basis = chain_map_space(src, tgt)
    m = zeros(tgt.dim, src.dim)
    for b in basis:
        if rng.integers(0, 2):
            m ^= b
    return ChainMapF2(src, tgt, m)


@dataclass
class Triangle:
    complexes: list[ChainComplexF2]
    maps: list[ChainMapF2]
    homotopies: list[HomotopyF2]


def cone_triangle(rng: np.random.Generator, dim_a: int, dim_b: int) -> Triangle:
    """A triangle A -> B -> Cone(f) -> A satisfying both lemma hypotheses.

    The three positions are rotated at random and every complex is
    conjugated by a random basis change, so the instance is not visibly a cone.
    """
    a = random_complex(rng, dim_a)
    b = random_complex(rng, dim_b)
    f = random_chain_map(rng, a, b)
    na, nb = dim_a, dim_b
    dc = zeros(na + nb, na + nb)
    dc[:na, :na] = a.d
    dc[na:, :na] = f.m
    dc[na:, na:] = b.d
    cone = ChainComplexF2(dc)
    incl = zeros(na + nb, nb)
    incl[na:, :] = identity(nb)
    proj = zeros(na, na + nb)
    proj[:, :na] = identity(na)
    h0 = zeros(na + nb, na)
    h0[:na, :] = identity(na)
    h1 = zeros(na, nb)
    h2 = zeros(nb, na + nb)
    h2[:, na:] = identity(nb)
    cs = [a, b, cone]
    fm = [f.m, incl, proj]
    hm = [h0, h1, h2]
    shift = int(rng.integers(0, 3))
    cs = cs[shift:] + cs[:shift]
    fm = fm[shift:] + fm[:shift]
    hm = hm[shift:] + hm[:shift]
    ps = [random_invertible(rng, c.dim) for c in cs]
    pinv = [inverse(p) for p in ps]
    new_cs = [ChainComplexF2(matmul(matmul(ps[k], cs[k].d), pinv[k])) for k in range(3)]
    maps = [
        ChainMapF2(new_cs[k], new_cs[(k + 1) % 3], matmul(matmul(ps[(k + 1) % 3], fm[k]), pinv[k]))
        for k in range(3)
    ]
    homs = [
        HomotopyF2(new_cs[k], new_cs[(k + 2) % 3], matmul(matmul(ps[(k + 2) % 3], hm[k]), pinv[k]))
        for k in range(3)
    ]
    return Triangle(new_cs, maps, homs)


def random_triangle(rng: np.random.Generator, dims: tuple[int, int, int]) -> Triangle:
    """Random complexes, random chain maps and random homotopies; no hypotheses."""
    cs = [random_complex(rng, n) for n in dims]
    maps = [random_chain_map(rng, cs[k], cs[(k + 1) % 3]) for k in range(3)]
    homs = [
        HomotopyF2(cs[k], cs[(k + 2) % 3], rng.integers(0, 2, size=(cs[(k + 2) % 3].dim, cs[k].dim)))
        for k in range(3)
    ]
    return Triangle(cs, maps, homs)


def find_homotopies(cs, fs, limit: int = 1 << 20) -> list[HomotopyF2] | None:
    """Brute-force a homotopy triple satisfying both lemma hypotheses.

    Only feasible for tiny complexes; gives up (returns None) past ``limit``
    candidate triples.
    """
    shapes = [(cs[(k + 2) % 3].dim, cs[k].dim) for k in range(3)]
    sizes = [r * c for r, c in shapes]
    total = 1 << sum(sizes)
    if total > limit:
        return None
    for bits in range(total):
        hs = []
        off = 0
        for (r, c), s in zip(shapes, sizes):
            chunk = (bits >> off) & ((1 << s) - 1)
            off += s
            h = np.array([(chunk >> i) & 1 for i in range(s)], dtype=np.uint8).reshape(r, c)
            hs.append(h)
        homs = [HomotopyF2(cs[k], cs[(k + 2) % 3], hs[k]) for k in range(3)]
        if check_triangle_hypotheses(cs, fs, homs).ok:
            return homs
    return None


# -- the worked example -------------------------------------------------------


def example_triangle() -> Triangle:
    """The unknot example: three 2-dimensional groups with zero differentials.

    Bases: C0 = (M, N), C1 = (P, Q), C2 = (R, S).
    f0: M, N -> Q;  f1: P -> R+S, Q -> 0;  f2: R, S -> M+N.
    The composites are all zero, so the homotopies are zero.
    """
    cs = [ChainComplexF2.zero(2) for _ in range(3)]
    f0 = [[0, 0], [1, 1]]
    f1 = [[1, 0], [1, 0]]
    f2 = [[1, 1], [1, 1]]
    maps = [ChainMapF2(cs[k], cs[(k + 1) % 3], m) for k, m in enumerate((f0, f1, f2))]
    homs = [HomotopyF2(cs[k], cs[(k + 2) % 3], zeros(2, 2)) for k in range(3)]
    return Triangle(cs, maps, homs)


def triangle_from_json(data: dict) -> Triangle:
    cs = [ChainComplexF2.from_json(c) for c in data["complexes"]]
    maps = [
        ChainMapF2(cs[k], cs[(k + 1) % 3], np.array(m, dtype=np.uint8).reshape(cs[(k + 1) % 3].dim, cs[k].dim))
        for k, m in enumerate(data["maps"])
    ]
    raw = data.get("homotopies")
    if raw is None:
        raw = [zeros(cs[(k + 2) % 3].dim, cs[k].dim) for k in range(3)]
    homs = [
        HomotopyF2(cs[k], cs[(k + 2) % 3], np.array(h, dtype=np.uint8).reshape(cs[(k + 2) % 3].dim, cs[k].dim))
        for k, h in enumerate(raw)
    ]
    return Triangle(cs, maps, homs)


def triangle_to_json(t: Triangle) -> dict:
    return {
        "complexes": [c.to_json() for c in t.complexes],
        "maps": [f.m.tolist() for f in t.maps],
        "homotopies": [h.h.tolist() for h in t.homotopies],
    }
