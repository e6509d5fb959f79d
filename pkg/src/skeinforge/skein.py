"""
Rank-level consequences of the unoriented skein exact triangle.

Everything here is arithmetic on ranks supplied by the caller; no diagram is
ever looked at.  For a link L and its two resolutions at one crossing, the
normalised ranks R = rk HFK * 2^(m - components), with m the largest
component count of the three, sit in an exact triangle of F2 vector spaces.
Exactness forces each R to be at most the sum of the other two and the
three to have even sum.

Only these rank consequences can be checked for general links: the maps in
the triangle come from holomorphic polygon counts, which are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass

LIMITATION = (
    "rank constraints only: the triangle maps are not computed, so exactness "
    "itself is checked only on explicitly supplied maps"
)


class SkeinError(ValueError):
    pass


@dataclass(frozen=True)
class TriangleRankReport:
    m: int
    R_L: int
    R_0: int
    R_1: int
    ineq_L: bool
    ineq_0: bool
    ineq_1: bool
    parity: bool

    @property
    def ok(self) -> bool:
        return self.ineq_L and self.ineq_0 and self.ineq_1 and self.parity

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "normalized_ranks": {"L": self.R_L, "L0": self.R_0, "L1": self.R_1},
            "checks": {
                "R_L <= R_0 + R_1": self.ineq_L,
                "R_0 <= R_L + R_1": self.ineq_0,
                "R_1 <= R_L + R_0": self.ineq_1,
                "sum even": self.parity,
            },
            "ok": self.ok,
            "note": LIMITATION,
        }


def _check_components(l: int, l0: int, l1: int) -> int:
    if min(l, l0, l1) < 1:
        raise SkeinError("component counts must be positive")
    m = max(l, l0, l1)
    if sorted((l, l0, l1)) != [m - 1, m - 1, m]:
        raise SkeinError(
            f"component counts {(l, l0, l1)} are not one link with m components and two with m - 1"
        )
    return m


def triangle_rank_check(rkL: int, l: int, rk0: int, l0: int, rk1: int, l1: int) -> TriangleRankReport:
    if min(rkL, rk0, rk1) < 0:
        raise SkeinError("ranks must be nonnegative")
    m = _check_components(l, l0, l1)
    R = [rk << (m - comps) for rk, comps in ((rkL, l), (rk0, l0), (rk1, l1))]
    a, b, c = R
    return TriangleRankReport(
        m=m,
        R_L=a,
        R_0=b,
        R_1=c,
        ineq_L=a <= b + c,
        ineq_0=b <= a + c,
        ineq_1=c <= a + b,
        parity=(a + b + c) % 2 == 0,
    )


def normalized_triangle_check(R_L: int, R_0: int, R_1: int) -> TriangleRankReport:
    """Checks on ranks that are already normalised (e.g. three Floer groups)."""
    return TriangleRankReport(
        m=0,
        R_L=R_L,
        R_0=R_0,
        R_1=R_1,
        ineq_L=R_L <= R_0 + R_1,
        ineq_0=R_0 <= R_L + R_1,
        ineq_1=R_1 <= R_L + R_0,
        parity=(R_L + R_0 + R_1) % 2 == 0,
    )


@dataclass(frozen=True)
class CorollaryReport:
    rank: int
    components: int
    det: int
    equality: bool
    lower_bound: bool

    def __bool__(self) -> bool:
        return self.equality

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "components": self.components,
            "det": self.det,
            "expected_if_quasi_alternating": 2 ** (self.components - 1) * self.det,
            "equality": self.equality,
            "lower_bound": self.lower_bound,
        }


def corollary_check(rk: int, l: int, det: int) -> CorollaryReport:
    """rk HFK = 2^(l-1) det holds for quasi-alternating links; >= holds always."""
    if l < 1:
        raise SkeinError("component count must be positive")
    target = 2 ** (l - 1) * det
    return CorollaryReport(rk, l, det, rk == target, rk >= target)
