"""
Quasi-alternating certificates.

A certificate is a binary tree.  Leaves are diagrams that are in the class
outright (an unknot diagram, or a connected reduced alternating diagram of
positive determinant); an internal node names a crossing whose two
smoothings are both certified and whose determinants add up.

``certify`` runs a bounded depth-first search and returns ``None`` when it
gives up.  That is never a proof of non-membership; ``qa_obstruction`` is
the only disproof offered.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .determinant import determinant
from .diagram import (
    PlanarDiagram,
    Resolution,
    canonical_form,
    components,
    has_kink,
    is_alternating,
    is_connected,
    resolve,
    simplify,
)


class LeafKind(enum.Enum):
    UNKNOT = "unknot"
    ALTERNATING = "alternating"


@dataclass(frozen=True)
class QACertificate:
    diagram: PlanarDiagram
    kind: LeafKind | None = None
    crossing: int | None = None
    dets: tuple[int, int, int] | None = None
    children: tuple["QACertificate", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.kind is not None

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_json(self) -> dict:
        out = {"diagram": self.diagram.to_json()}
        if self.is_leaf:
            out["kind"] = self.kind.value
        else:
            out["crossing"] = self.crossing
            out["det"] = list(self.dets)
            out["children"] = [c.to_json() for c in self.children]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "QACertificate":
        pd = PlanarDiagram.from_json(data["diagram"])
        if "kind" in data:
            return cls(pd, kind=LeafKind(data["kind"]))
        return cls(
            pd,
            crossing=int(data["crossing"]),
            dets=tuple(int(v) for v in data["det"]),
            children=tuple(cls.from_json(c) for c in data.get("children", ())),
        )


@dataclass
class VerifyResult:
    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "path": list(self.path), "reason": self.reason}


def is_unknot_leaf(pd: PlanarDiagram) -> bool:
    s = simplify(pd)
    return not s.crossings and components(s) == 1


def is_alternating_leaf(pd: PlanarDiagram) -> bool:
    return (
        bool(pd.crossings)
        and is_connected(pd)
        and is_alternating(pd)
        and not has_kink(pd)
        and determinant(pd) >= 1
    )


def leaf_kind(pd: PlanarDiagram) -> LeafKind | None:
    if is_unknot_leaf(pd):
        return LeafKind.UNKNOT
    if is_alternating_leaf(pd):
        return LeafKind.ALTERNATING
    return None


def verify_certificate(cert: QACertificate, _path: tuple[int, ...] = ()) -> VerifyResult:
    """Recompute every node of ``cert``; report the first failing node."""
    pd = cert.diagram
    if cert.is_leaf:
        if cert.children or cert.crossing is not None:
            return VerifyResult(False, _path, "leaf carries internal-node data")
        if cert.kind is LeafKind.UNKNOT and not is_unknot_leaf(pd):
            return VerifyResult(False, _path, "unknot leaf does not simplify to a single loop")
        if cert.kind is LeafKind.ALTERNATING and not is_alternating_leaf(pd):
            return VerifyResult(
                False, _path, "alternating leaf is not connected, reduced, alternating with det >= 1"
            )
        return VerifyResult(True)
    if cert.crossing is None or not 0 <= cert.crossing < len(pd.crossings):
        return VerifyResult(False, _path, f"crossing {cert.crossing} is not in the diagram")
    if len(cert.children) != 2 or cert.dets is None or len(cert.dets) != 3:
        return VerifyResult(False, _path, "internal node needs two children and a det triple")
    d, d0, d1 = cert.dets
    if d0 < 1 or d1 < 1:
        return VerifyResult(False, _path, f"resolution determinant below 1: {cert.dets}")
    if d != d0 + d1:
        return VerifyResult(False, _path, f"det {d} != {d0} + {d1}")
    actual = (
        determinant(pd),
        determinant(cert.children[0].diagram),
        determinant(cert.children[1].diagram),
    )
    if actual != tuple(cert.dets):
        return VerifyResult(False, _path, f"recorded dets {cert.dets} but computed {actual}")
    for k, choice in enumerate(Resolution):
        expected = canonical_form(resolve(pd, cert.crossing, choice))
        if canonical_form(cert.children[k].diagram) != expected:
            return VerifyResult(False, _path + (k,), f"child {k} is not the {choice.name} resolution")
    for k, child in enumerate(cert.children):
        res = verify_certificate(child, _path + (k,))
        if not res:
            return res
    return VerifyResult(True)


def qa_obstruction(components: int, det: int, hfk_rank: int) -> bool:
    """True when rk HFK != 2^(l-1) det, which rules out quasi-alternating."""
    return hfk_rank != 2 ** (components - 1) * det


class BudgetExhausted(Exception):
    pass


@dataclass
class _Search:
    budget: int
    expansions: int = 0
    solved: dict = field(default_factory=dict)
    failed: set = field(default_factory=set)

    def ranked_crossings(self, pd: PlanarDiagram, det: int):
        """Crossings whose smoothings split det additively, best first.

        Both smoothings alternating ranks first, then one, then none.
        """
        out = []
        for v in range(len(pd.crossings)):
            kids = [resolve(pd, v, choice) for choice in Resolution]
            dets = [determinant(k) for k in kids]
            if min(dets) < 1 or sum(dets) != det:
                continue
            alt = sum(is_connected(k) and is_alternating(k) for k in kids)
            out.append((-alt, v, kids, dets))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def run(self, pd: PlanarDiagram) -> QACertificate | None:
        kind = leaf_kind(pd)
        if kind is not None:
            return QACertificate(pd, kind=kind)
        key = canonical_form(pd)
        if key in self.solved:
            return _rebase(self.solved[key], pd)
        if key in self.failed:
            return None
        det = determinant(pd)
        if det < 1:
            self.failed.add(key)
            return None
        for _, v, kids, dets in self.ranked_crossings(pd, det):
            if self.expansions >= self.budget:
                raise BudgetExhausted
            self.expansions += 1
            c0 = self.run(kids[0])
            c1 = self.run(kids[1]) if c0 is not None else None
            if c0 is not None and c1 is not None:
                cert = QACertificate(pd, crossing=v, dets=(det, dets[0], dets[1]), children=(c0, c1))
                self.solved[key] = cert
                return cert
        # exhaustion unwinds by exception, so reaching here is a complete failure
        self.failed.add(key)
        return None


def _rebase(cert: QACertificate, pd: PlanarDiagram) -> QACertificate:
    """Re-anchor a memoised certificate on an equivalent relabelling ``pd``."""
    if cert.diagram == pd:
        return cert
    if cert.is_leaf:
        return QACertificate(pd, kind=cert.kind)
    # crossing indices differ between relabellings: redo the node on pd itself
    target = canonical_form(cert.children[0].diagram), canonical_form(cert.children[1].diagram)
    for v in range(len(pd.crossings)):
        kids = [resolve(pd, v, choice) for choice in Resolution]
        forms = tuple(canonical_form(k) for k in kids)
        if forms == target:
            return QACertificate(
                pd,
                crossing=v,
                dets=cert.dets,
                children=(_rebase(cert.children[0], kids[0]), _rebase(cert.children[1], kids[1])),
            )
    return cert


def certify(pd: PlanarDiagram, budget: int = 100_000) -> QACertificate | None:
    """Search for a certificate using at most ``budget`` (diagram, crossing) expansions.

    Returns ``None`` (unknown) if the search fails or the budget runs out.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    search = _Search(budget)
    try:
        return search.run(pd)
    except BudgetExhausted:
        return None


def certify_with_stats(pd: PlanarDiagram, budget: int = 100_000) -> tuple[QACertificate | None, int]:
    if budget <= 0:
        raise ValueError("budget must be positive")
    search = _Search(budget)
    try:
        cert = search.run(pd)
    except BudgetExhausted:
        cert = None
    return cert, search.expansions
