"""
Combinatorial records of multi-pointed Heegaard diagrams built from a
connected link projection, and of the curve swaps used for resolutions.

The surface is the boundary of a regular neighbourhood of the projection:
one four-holed sphere per crossing, joined by tubes along the edges.  The
distinguished edge and every ladybug edge contribute a marked cylinder
spliced into their edge's tube.  Nothing here is embedded geometry; pieces
are boundary-incidence lists and curves name the piece that supports them.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Sequence

from .diagram import DiagramError, PlanarDiagram, faces, is_connected, trace_components


class HeegaardError(ValueError):
    pass


class Variant(enum.Enum):
    GAMMA = "gamma"
    DELTA = "delta"


# the three replacement curves meet pairwise in two points each
INTERSECTIONS = {
    "beta,gamma": ["A", "U"],
    "gamma,delta": ["B", "V"],
    "delta,beta": ["C", "W"],
}


@dataclass(frozen=True)
class Piece:
    """A subsurface: ``kind`` is crossing, tube, meridian or ladybug."""

    name: str
    kind: str
    chi: int
    boundary: tuple[str, ...]
    edge: int | None = None
    crossing: int | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "chi": self.chi,
            "boundary": list(self.boundary),
            "edge": self.edge,
            "crossing": self.crossing,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Piece":
        return cls(d["name"], d["kind"], d["chi"], tuple(d["boundary"]), d.get("edge"), d.get("crossing"))


@dataclass(frozen=True)
class Curve:
    """``kind``: region, ladybug_alpha, crossing, meridian, ladybug_beta, gamma or delta."""

    name: str
    kind: str
    support: str

    @property
    def is_alpha(self) -> bool:
        return self.kind in ("region", "ladybug_alpha")

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "support": self.support}

    @classmethod
    def from_json(cls, d: dict) -> "Curve":
        return cls(d["name"], d["kind"], d["support"])


@dataclass(frozen=True)
class CurveReplacement:
    crossing: int
    variant: Variant


@dataclass(frozen=True)
class SpecialHeegaardDiagram:
    pd: PlanarDiagram
    components: int
    distinguished_edge: int
    marked_edges: tuple[int, ...]
    genus: int
    pieces: tuple[Piece, ...]
    alpha_curves: tuple[Curve, ...]
    beta_curves: tuple[Curve, ...]
    punctures: tuple[str, ...]
    replacement: dict | None = None

    @property
    def k(self) -> int:
        return len(self.marked_edges)

    @property
    def crossing_pieces(self) -> list[Piece]:
        return [p for p in self.pieces if p.kind == "crossing"]

    @property
    def edge_cylinders(self) -> list[Piece]:
        return [p for p in self.pieces if p.kind in ("meridian", "ladybug")]

    @property
    def v_exponent(self) -> int:
        """Power of the 2-dimensional V in HF = HFK ⊗ V^(basepoint pairs - l)."""
        return self.k + 1 - self.components

    def counts(self) -> "HeegaardCounts":
        return HeegaardCounts(self.genus, len(self.alpha_curves), len(self.beta_curves), len(self.punctures))

    def to_json(self) -> dict:
        return {
            "pd": self.pd.to_json(),
            "components": self.components,
            "distinguished_edge": self.distinguished_edge,
            "marked_edges": list(self.marked_edges),
            "genus": self.genus,
            "k": self.k,
            "pieces": [p.to_json() for p in self.pieces],
            "alpha_curves": [c.to_json() for c in self.alpha_curves],
            "beta_curves": [c.to_json() for c in self.beta_curves],
            "punctures": list(self.punctures),
            "replacement": self.replacement,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SpecialHeegaardDiagram":
        return cls(
            pd=PlanarDiagram.from_json(d["pd"]),
            components=d["components"],
            distinguished_edge=d["distinguished_edge"],
            marked_edges=tuple(d["marked_edges"]),
            genus=d["genus"],
            pieces=tuple(Piece.from_json(p) for p in d["pieces"]),
            alpha_curves=tuple(Curve.from_json(c) for c in d["alpha_curves"]),
            beta_curves=tuple(Curve.from_json(c) for c in d["beta_curves"]),
            punctures=tuple(d["punctures"]),
            replacement=d.get("replacement"),
        )


def _component_edges(pd: PlanarDiagram) -> list[set[int]]:
    return [{pd.crossings[v][p] for v, p in comp} for comp in trace_components(pd)]


def unbounded_edges(pd: PlanarDiagram) -> list[int]:
    """Edges on the boundary of the unbounded face, ascending."""
    outer = faces(pd)[0]
    return sorted({pd.crossings[v][p] for v, p in outer})


def default_marked_edges(pd: PlanarDiagram, e: int) -> list[int]:
    """The minimal choice: the lowest edge of each component that misses ``e``."""
    return [min(edges) for edges in _component_edges(pd) if e not in edges]


def _dart_circle(v: int, p: int) -> str:
    return f"d{v}.{p}"


def build(
    pd: PlanarDiagram,
    marked_edges: Sequence[int] | None = None,
    e: int | None = None,
) -> SpecialHeegaardDiagram:
    """Special Heegaard diagram of ``pd`` with ladybugs on ``marked_edges``.

    ``e`` defaults to the lowest edge on the unbounded face, ``marked_edges``
    to one edge per component not passing through ``e`` (k = l - 1).
    """
    if not pd.crossings or pd.free_loops or not is_connected(pd):
        raise HeegaardError("need a connected diagram with at least one crossing")
    outer = unbounded_edges(pd)
    if e is None:
        e = outer[0]
    if e not in pd.edges:
        raise HeegaardError(f"edge {e} is not in the diagram")
    if e not in outer:
        raise HeegaardError(f"edge {e} is not adjacent to the unbounded region")
    marks = list(default_marked_edges(pd, e) if marked_edges is None else marked_edges)
    unknown = [s for s in marks if s not in pd.edges]
    if unknown:
        raise HeegaardError(f"marked edges not in the diagram: {unknown}")
    comp_edges = _component_edges(pd)
    covered = set(marks) | {e}
    for i, edges in enumerate(comp_edges):
        if not edges & covered:
            raise HeegaardError(f"component {i} contains neither e nor a marked edge")
    l = len(comp_edges)
    if len(marks) < l - 1:
        raise HeegaardError(f"k = {len(marks)} ladybugs but k >= l - 1 = {l - 1} is required")

    c = len(pd.crossings)
    pieces: list[Piece] = []
    for v in range(c):
        pieces.append(Piece(f"X{v}", "crossing", -2, tuple(_dart_circle(v, p) for p in range(4)), crossing=v))
    # each edge tube runs from one dart circle to the other, with marked cylinders spliced in
    ends = pd.darts_of()
    cyl_of_mark = [f"L{i}" for i in range(len(marks))]
    meridian_piece = ""
    for a in pd.edges:
        (v0, p0), (v1, p1) = ends[a]
        segments: list[tuple[str, str]] = []
        if a == e:
            meridian_piece = f"E{a}"
            segments.append((meridian_piece, "meridian"))
        for i, s in enumerate(marks):
            if s == a:
                segments.append((cyl_of_mark[i], "ladybug"))
        segments.append((f"T{a}", "tube"))
        circle = _dart_circle(v0, p0)
        for j, (name, kind) in enumerate(segments):
            nxt = _dart_circle(v1, p1) if j == len(segments) - 1 else f"c{a}.{j}"
            pieces.append(Piece(name, kind, 0, (circle, nxt), edge=a))
            circle = nxt

    fs = faces(pd)
    alphas = [Curve(f"alpha_A{r}", "region", f"face{r}") for r in range(1, len(fs))]
    alphas += [Curve(f"alpha_s{i}", "ladybug_alpha", cyl_of_mark[i]) for i in range(len(marks))]
    betas = [Curve(f"beta_v{v}", "crossing", f"X{v}") for v in range(c)]
    betas.append(Curve("beta_e", "meridian", meridian_piece))
    betas += [Curve(f"beta_s{i}", "ladybug_beta", cyl_of_mark[i]) for i in range(len(marks))]
    punctures = [f"{meridian_piece}:left", f"{meridian_piece}:right"]
    for name in cyl_of_mark:
        punctures += [f"{name}:left", f"{name}:right"]

    return SpecialHeegaardDiagram(
        pd=pd,
        components=l,
        distinguished_edge=e,
        marked_edges=tuple(marks),
        genus=c + 1,
        pieces=tuple(pieces),
        alpha_curves=tuple(alphas),
        beta_curves=tuple(betas),
        punctures=tuple(punctures),
    )


def replace_for_resolution(d: SpecialHeegaardDiagram, r: CurveReplacement) -> SpecialHeegaardDiagram:
    """Swap the crossing curve at ``r.crossing`` for the gamma or delta curve."""
    target = f"beta_v{r.crossing}"
    if not any(b.name == target and b.kind == "crossing" for b in d.beta_curves):
        raise HeegaardError(f"no crossing beta curve at crossing {r.crossing}")
    new = Curve(f"{r.variant.value}_v{r.crossing}", r.variant.value, f"X{r.crossing}")
    betas = tuple(new if b.name == target else b for b in d.beta_curves)
    record = {
        "crossing": r.crossing,
        "variant": r.variant.value,
        "intersections": {k: list(v) for k, v in INTERSECTIONS.items()},
    }
    return replace(d, beta_curves=betas, replacement=record)


@dataclass
class HeegaardReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


def _surface_checks(d: SpecialHeegaardDiagram, out: list[str]) -> None:
    names = Counter(p.name for p in d.pieces)
    dup = sorted(n for n, k in names.items() if k > 1)
    if dup:
        out.append(f"duplicate piece names {dup}")
    glued = Counter(circle for p in d.pieces for circle in p.boundary)
    bad = sorted(cn for cn, k in glued.items() if k != 2)
    if bad:
        out.append(f"boundary circles not glued in pairs: {bad[:6]}")
    for p in d.pieces:
        expected = {"crossing": (-2, 4), "tube": (0, 2), "meridian": (0, 2), "ladybug": (0, 2)}.get(p.kind)
        if expected is None:
            out.append(f"piece {p.name} has unknown kind {p.kind!r}")
        elif (p.chi, len(p.boundary)) != expected:
            out.append(f"piece {p.name} has chi={p.chi} with {len(p.boundary)} boundary circles")
    chi = sum(p.chi for p in d.pieces)
    if chi != 2 - 2 * d.genus:
        out.append(f"Euler characteristic {chi} != 2 - 2g = {2 - 2 * d.genus}")
    # connectivity of the glued surface
    holders: dict[str, list[str]] = {}
    for p in d.pieces:
        for circle in p.boundary:
            holders.setdefault(circle, []).append(p.name)
    if d.pieces:
        seen = {d.pieces[0].name}
        stack = [d.pieces[0]]
        by_name = {p.name: p for p in d.pieces}
        while stack:
            p = stack.pop()
            for circle in p.boundary:
                for q in holders[circle]:
                    if q not in seen:
                        seen.add(q)
                        stack.append(by_name[q])
        if len(seen) != len(by_name):
            out.append("surface is not connected")


def _gluing_matches_pd(d: SpecialHeegaardDiagram, out: list[str]) -> None:
    """Each edge's chain of cylinders must join that edge's two darts."""
    pd = d.pd
    holders: dict[str, list[Piece]] = {}
    for p in d.pieces:
        for circle in p.boundary:
            holders.setdefault(circle, []).append(p)
    for a, ((v0, p0), (v1, p1)) in pd.darts_of().items():
        circle = _dart_circle(v0, p0)
        prev = None
        for _ in range(len(d.pieces)):
            nxt = [p for p in holders.get(circle, []) if p.kind != "crossing" and p is not prev]
            if len(nxt) != 1:
                break
            prev = nxt[0]
            if prev.edge != a:
                out.append(f"tube at dart ({v0},{p0}) belongs to edge {prev.edge}, expected {a}")
                break
            circle = next(cn for cn in prev.boundary if cn != circle)
            if circle.startswith("d"):
                break
        if circle != _dart_circle(v1, p1):
            out.append(f"edge {a} tube does not join darts ({v0},{p0}) and ({v1},{p1})")


def validate(d: SpecialHeegaardDiagram) -> HeegaardReport:
    """Check counts, the surface record and its agreement with the projection."""
    out: list[str] = []
    pd = d.pd
    c = len(pd.crossings)
    k = d.k
    if len(d.crossing_pieces) != c:
        out.append(f"{len(d.crossing_pieces)} crossing pieces for {c} crossings")
    if d.genus != c + 1:
        out.append(f"genus {d.genus} != c + 1 = {c + 1}")
    if len(d.alpha_curves) != d.genus + k:
        out.append(f"alpha count {len(d.alpha_curves)} != g + k = {d.genus + k}")
    if len(d.beta_curves) != d.genus + k:
        out.append(f"beta count {len(d.beta_curves)} != g + k = {d.genus + k}")
    if len(d.punctures) != 2 * k + 2:
        out.append(f"2k+2 violated: {len(d.punctures)} punctures with k = {k}")
    regions = [a for a in d.alpha_curves if a.kind == "region"]
    if len(regions) != c + 1:
        out.append(f"{len(regions)} region alphas, expected one per bounded region ({c + 1})")
    if len({a.support for a in regions}) != len(regions):
        out.append("two region alphas share a region")
    if any(not a.is_alpha for a in d.alpha_curves) or any(b.is_alpha for b in d.beta_curves):
        out.append("alpha and beta families are mixed")
    ladybugs = [p.name for p in d.edge_cylinders if p.kind == "ladybug"]
    if len(ladybugs) != k:
        out.append(f"{len(ladybugs)} ladybug cylinders for k = {k}")
    for name in ladybugs:
        na = sum(1 for a in d.alpha_curves if a.kind == "ladybug_alpha" and a.support == name)
        nb = sum(1 for b in d.beta_curves if b.kind == "ladybug_beta" and b.support == name)
        npunct = sum(1 for p in d.punctures if p.split(":")[0] == name)
        if (na, nb, npunct) != (1, 1, 2):
            out.append(f"ladybug {name} has {na} alpha, {nb} beta, {npunct} punctures")
    meridians = [b for b in d.beta_curves if b.kind == "meridian"]
    if len(meridians) != 1:
        out.append(f"{len(meridians)} meridian curves, expected 1")
    per_crossing = Counter(b.support for b in d.beta_curves if b.kind in ("crossing", "gamma", "delta"))
    for v in range(c):
        if per_crossing.get(f"X{v}", 0) != 1:
            out.append(f"crossing {v} carries {per_crossing.get(f'X{v}', 0)} beta curves")
    replaced = sum(1 for b in d.beta_curves if b.kind in ("gamma", "delta"))
    if replaced > 1:
        out.append(f"{replaced} crossing curves replaced; at most one is allowed")
    if replaced and not d.replacement:
        out.append("replacement curve present without an intersection record")
    try:
        comp_edges = _component_edges(pd)
        covered = set(d.marked_edges) | {d.distinguished_edge}
        if any(not edges & covered for edges in comp_edges):
            out.append("some component contains neither e nor a marked edge")
        if k < len(comp_edges) - 1:
            out.append(f"k = {k} < l - 1 = {len(comp_edges) - 1}")
        if d.distinguished_edge not in unbounded_edges(pd):
            out.append("distinguished edge is not on the unbounded region")
    except DiagramError as exc:
        out.append(f"projection is unusable: {exc}")
    _surface_checks(d, out)
    _gluing_matches_pd(d, out)
    return HeegaardReport(out)


@dataclass(frozen=True)
class HeegaardCounts:
    genus: int
    alphas: int
    betas: int
    punctures: int

    def handleslide(self) -> "HeegaardCounts":
        return self

    def destabilize(self, times: int = 1) -> "HeegaardCounts":
        if times > min(self.genus, self.alphas, self.betas):
            raise HeegaardError("cannot destabilise below genus 0")
        return HeegaardCounts(self.genus - times, self.alphas - times, self.betas - times, self.punctures)

    def to_json(self) -> dict:
        return {"genus": self.genus, "alphas": self.alphas, "betas": self.betas, "punctures": self.punctures}


def reduce_to_resolution(d: SpecialHeegaardDiagram) -> HeegaardCounts:
    """Counts after the alpha handleslide and the single destabilisation that
    turn a gamma-replaced diagram into a special diagram of the resolution."""
    if not d.replacement:
        raise HeegaardError("diagram has no replaced crossing curve")
    return d.counts().handleslide().destabilize(1)


def expected_counts(crossings: int, k: int) -> HeegaardCounts:
    g = crossings + 1
    return HeegaardCounts(g, g + k, g + k, 2 * k + 2)


def random_marked_edges(pd: PlanarDiagram, e: int, rng, extra: int = 2) -> list[int]:
    """A random valid multiset: one edge per uncovered component plus up to ``extra`` more."""
    marks = []
    for edges in _component_edges(pd):
        if e not in edges:
            marks.append(rng.choice(sorted(edges)))
    marks += [rng.choice(pd.edges) for _ in range(rng.randint(0, extra))]
    rng.shuffle(marks)
    return marks


def parse_edges(text: str | None) -> list[int] | None:
    if text is None:
        return None
    return [int(v) for v in text.replace(" ", "").split(",") if v]


def summarize(d: SpecialHeegaardDiagram) -> dict:
    return {
        "genus": d.genus,
        "k": d.k,
        "alphas": len(d.alpha_curves),
        "betas": len(d.beta_curves),
        "punctures": len(d.punctures),
        "components": d.components,
        "v_exponent": d.v_exponent,
    }


__all__ = [
    "CurveReplacement",
    "HeegaardCounts",
    "HeegaardError",
    "HeegaardReport",
    "SpecialHeegaardDiagram",
    "Variant",
    "build",
    "expected_counts",
    "reduce_to_resolution",
    "replace_for_resolution",
    "validate",
]
