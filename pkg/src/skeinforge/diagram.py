"""
Planar diagrams of links in PD notation.

Each crossing is a 4-tuple of edge labels listed counterclockwise starting
from the incoming under-strand, so positions 0 and 2 are the under-strand
and positions 1 and 3 the over-strand.  Crossing-free circles are carried
as a bare count (``free_loops``).

A *dart* is a pair ``(crossing index, position)``: one end of an edge at a
crossing.  Faces are orbits of the dart permutation "walk to the other end
of the edge, then turn to the next position around that crossing".
"""

from __future__ import annotations

import enum
import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

Crossing = tuple[int, int, int, int]
Dart = tuple[int, int]
Face = tuple[Dart, ...]


class DiagramError(ValueError):
    """Raised for malformed PD input or invalid diagram operations."""


class PDSyntaxError(DiagramError):
    pass


class PDLabelError(DiagramError):
    pass


class Resolution(enum.Enum):
    """The two smoothings of a crossing.

    ``ZERO`` joins positions (0,1) and (2,3); ``ONE`` joins (0,3) and (1,2).
    """

    ZERO = 0
    ONE = 1

    @property
    def pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((0, 1), (2, 3)) if self is Resolution.ZERO else ((0, 3), (1, 2))


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        crossings = tuple(tuple(int(a) for a in x) for x in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        if self.free_loops < 0:
            raise DiagramError("free_loops must be nonnegative")
        for x in crossings:
            if len(x) != 4:
                raise PDSyntaxError(f"crossing {x} does not have four edges")
            if min(x) < 1:
                raise PDLabelError(f"crossing {x} has a non-positive edge label")
        counts = Counter(a for x in crossings for a in x)
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise PDLabelError(f"edge labels not occurring exactly twice: {bad}")

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def edges(self) -> list[int]:
        return sorted({a for x in self.crossings for a in x})

    def darts_of(self) -> dict[int, list[Dart]]:
        """Map each edge label to its two darts, in crossing-list order."""
        ends: dict[int, list[Dart]] = defaultdict(list)
        for ci, x in enumerate(self.crossings):
            for pos, a in enumerate(x):
                ends[a].append((ci, pos))
        return dict(ends)

    def to_json(self) -> dict:
        return {"crossings": [list(x) for x in self.crossings], "free_loops": self.free_loops}

    @classmethod
    def from_json(cls, data: dict) -> "PlanarDiagram":
        return cls(tuple(tuple(x) for x in data["crossings"]), int(data.get("free_loops", 0)))

    def to_pd(self) -> str:
        body = ",".join("X[" + ",".join(map(str, x)) + "]" for x in self.crossings)
        text = f"PD[{body}]"
        return text + (f" U{self.free_loops}" if self.free_loops else "")

    def __str__(self) -> str:
        return self.to_pd()


_X_RE = re.compile(r"X\[([^\]]*)\]")


def parse_pd(text: str) -> PlanarDiagram:
    """Parse ``PD[X[a,b,c,d], ...] U<k>`` or one ``X[...]`` per line.

    A JSON object with ``crossings`` and ``free_loops`` keys is accepted too.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return PlanarDiagram.from_json(json.loads(stripped))
    s = re.sub(r"\s+", "", stripped)
    free = 0
    m = re.search(r"U(\d+)$", s)
    if m:
        free = int(m.group(1))
        s = s[: m.start()]
    if s.startswith("PD["):
        if not s.endswith("]"):
            raise PDSyntaxError("unterminated PD[...]")
        s = s[3:-1]
    crossings = []
    pos = 0
    while pos < len(s):
        if s[pos] == ",":
            pos += 1
            continue
        m = _X_RE.match(s, pos)
        if not m:
            raise PDSyntaxError(f"unexpected token at {s[pos:pos + 12]!r}")
        fields = m.group(1).split(",")
        if len(fields) != 4 or not all(f.isdigit() for f in fields):
            raise PDSyntaxError(f"malformed crossing X[{m.group(1)}]")
        crossings.append(tuple(int(f) for f in fields))
        pos = m.end()
    return PlanarDiagram(tuple(crossings), free)


# -- strand tracing ----------------------------------------------------------


def _other_end(pd: PlanarDiagram, ends: dict[int, list[Dart]], dart: Dart) -> Dart:
    a = pd.crossings[dart[0]][dart[1]]
    d0, d1 = ends[a]
    return d1 if d0 == dart else d0


def trace_components(pd: PlanarDiagram) -> list[list[Dart]]:
    """Walk every link component through the crossings.

    Each component is returned as the list of darts at which it *enters* a
    crossing, in traversal order.  Free loops are not included.
    """
    ends = pd.darts_of()
    seen_edges: set[int] = set()
    comps = []
    for start in pd.edges:
        if start in seen_edges:
            continue
        # enter through the first listed end of the lowest unseen edge
        dart = ends[start][0]
        entries = []
        while True:
            label = pd.crossings[dart[0]][dart[1]]
            if label in seen_edges:
                break
            seen_edges.add(label)
            entries.append(dart)
            out = (dart[0], (dart[1] + 2) % 4)
            dart = _other_end(pd, ends, out)
        comps.append(entries)
    return comps


def components(pd: PlanarDiagram) -> int:
    """Number of link components (strand cycles plus free loops)."""
    return len(trace_components(pd)) + pd.free_loops


def is_alternating(pd: PlanarDiagram) -> bool:
    for comp in trace_components(pd):
        passes = [pos % 2 for _, pos in comp]
        if any(passes[i] == passes[i - 1] for i in range(len(passes))):
            return False
    return True


def crossing_graph_pieces(pd: PlanarDiagram) -> int:
    """Number of connected pieces of the 4-valent crossing graph."""
    n = len(pd.crossings)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (c0, _), (c1, _) in pd.darts_of().values():
        parent[find(c0)] = find(c1)
    return len({find(i) for i in range(n)})


def is_connected(pd: PlanarDiagram) -> bool:
    if not pd.crossings:
        return pd.free_loops == 1
    return pd.free_loops == 0 and crossing_graph_pieces(pd) == 1


# -- faces -------------------------------------------------------------------


def face_cycles(pd: PlanarDiagram) -> list[Face]:
    """All faces of the diagram (of every connected piece), as dart cycles.

    The dart ``(c, i)`` stands for the side of edge ``crossings[c][i]`` seen
    when leaving crossing ``c`` through position ``i``.  The corner between
    positions ``j`` and ``j+1`` of a crossing lies in the face of dart
    ``(c, j+1)``.
    """
    ends = pd.darts_of()
    seen: set[Dart] = set()
    faces = []
    for ci in range(len(pd.crossings)):
        for pos in range(4):
            if (ci, pos) in seen:
                continue
            face = []
            dart = (ci, pos)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                c, j = _other_end(pd, ends, dart)
                dart = (c, (j + 1) % 4)
            faces.append(tuple(face))
    return faces


def unbounded_face_index(pd: PlanarDiagram, faces: Sequence[Face]) -> int:
    """Index of the face designated unbounded (A_0).

    Rule: take the lowest edge label and an end of it where it is an
    under-strand (the first such end in crossing order, falling back to its
    first end); the face of that dart is A_0.
    """
    low = min(pd.edges)
    ends = pd.darts_of()[low]
    under = [d for d in ends if d[1] % 2 == 0]
    dart = (under or ends)[0]
    for k, face in enumerate(faces):
        if dart in face:
            return k
    raise DiagramError("dart not found in any face")


def faces(pd: PlanarDiagram) -> list[Face]:
    """Faces of a connected diagram, with the unbounded face A_0 first."""
    if not pd.crossings:
        raise DiagramError("faces need at least one crossing")
    if not is_connected(pd):
        raise DiagramError("diagram is not connected; faces are only defined per piece")
    fs = face_cycles(pd)
    k = unbounded_face_index(pd, fs)
    fs = [fs[k]] + fs[:k] + fs[k + 1:]
    if len(fs) != len(pd.crossings) + 2:
        raise DiagramError(
            f"{len(fs)} faces for {len(pd.crossings)} crossings: PD code is not planar"
        )
    return fs


def face_labels(pd: PlanarDiagram, face: Face) -> list[int]:
    return [pd.crossings[c][i] for c, i in face]


# -- rewriting ---------------------------------------------------------------


def _contract(pd: PlanarDiagram, drop: Iterable[int], joins: Iterable[tuple[int, int]]) -> PlanarDiagram:
    """Delete crossings ``drop`` after identifying the edge labels in ``joins``.

    Label classes that no longer meet any surviving crossing become free loops.
    """
    drop = set(drop)
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    touched = set()
    for a, b in joins:
        touched.update((a, b))
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    kept = [tuple(find(a) for a in x) for i, x in enumerate(pd.crossings) if i not in drop]
    alive = {a for x in kept for a in x}
    new_loops = len({find(a) for a in touched} - alive)
    return relabel(PlanarDiagram(tuple(kept), pd.free_loops + new_loops))


def resolve(pd: PlanarDiagram, index: int, choice: Resolution) -> PlanarDiagram:
    """Smooth crossing ``index`` and return the relabelled diagram."""
    if not 0 <= index < len(pd.crossings):
        raise DiagramError(f"crossing index {index} out of range")
    x = pd.crossings[index]
    joins = [(x[p], x[q]) for p, q in choice.pairs]
    return _contract(pd, [index], joins)


def relabel(pd: PlanarDiagram) -> PlanarDiagram:
    """Compact relabelling 1..2c by strand-tracing from the lowest label."""
    if not pd.crossings:
        return pd
    ends = pd.darts_of()
    new: dict[int, int] = {}
    for comp in trace_components(pd):
        for c, i in comp:
            new[pd.crossings[c][i]] = len(new) + 1
    assert len(new) == len(ends)
    crossings = tuple(tuple(new[a] for a in x) for x in pd.crossings)
    return PlanarDiagram(crossings, pd.free_loops)


def _kink(pd: PlanarDiagram) -> tuple[int, Resolution] | None:
    for ci, x in enumerate(pd.crossings):
        for p in range(4):
            if x[p] == x[(p + 1) % 4]:
                # the smoothing that keeps the loop attached to the strand
                pair = {p, (p + 1) % 4}
                isolate = Resolution.ZERO if pair in ({0, 1}, {2, 3}) else Resolution.ONE
                keep = Resolution.ONE if isolate is Resolution.ZERO else Resolution.ZERO
                return ci, keep
    return None


def _r2_bigon(pd: PlanarDiagram) -> tuple[int, int] | None:
    for face in face_cycles(pd):
        if len(face) != 2:
            continue
        (c0, p0), (c1, p1) = face
        if c0 == c1:
            continue
        # the two bigon edges, each with its position at both crossings
        ends = pd.darts_of()
        parities = []
        for c, p in face:
            label = pd.crossings[c][p]
            parities.append({pos % 2 for _, pos in ends[label]})
        if all(len(s) == 1 for s in parities) and parities[0] != parities[1]:
            return min(c0, c1), max(c0, c1)
    return None


def has_kink(pd: PlanarDiagram) -> bool:
    return _kink(pd) is not None


def simplify(pd: PlanarDiagram) -> PlanarDiagram:
    """Remove Reidemeister I kinks and II bigons until none remain.

    Kinks are removed first, lowest crossing index first; bigons are
    found by scanning faces in dart order.
    """
    pd = relabel(pd)
    while True:
        k = _kink(pd)
        if k is not None:
            pd = resolve(pd, *k)
            continue
        b = _r2_bigon(pd)
        if b is not None:
            joins = []
            for ci in b:
                x = pd.crossings[ci]
                joins += [(x[0], x[2]), (x[1], x[3])]
            pd = _contract(pd, b, joins)
            continue
        return pd


def mirror(pd: PlanarDiagram) -> PlanarDiagram:
    """Switch every crossing (rotate each tuple by one position)."""
    return PlanarDiagram(tuple((x[1], x[2], x[3], x[0]) for x in pd.crossings), pd.free_loops)


def disjoint_union(a: PlanarDiagram, b: PlanarDiagram) -> PlanarDiagram:
    shift = max(a.edges, default=0)
    moved = tuple(tuple(e + shift for e in x) for x in b.crossings)
    return PlanarDiagram(a.crossings + moved, a.free_loops + b.free_loops)


def canonical_form(pd: PlanarDiagram) -> tuple:
    """Lexicographically least PD code over strand-tracing relabellings.

    Every choice of starting edge and direction for the first component is
    tried; later components start at their lowest old label.  Crossings are
    compared up to the half-turn (a,b,c,d) ~ (c,d,a,b), which only records
    the under-strand direction.  Not a full isomorphism test.
    """
    if not pd.crossings:
        return ((), pd.free_loops)
    ends = pd.darts_of()
    best = None
    for start in pd.edges:
        for first in ends[start]:
            new: dict[int, int] = {}
            dart = first
            order = [dart]
            pending = sorted(pd.edges)
            while True:
                while True:
                    label = pd.crossings[dart[0]][dart[1]]
                    if label in new:
                        break
                    new[label] = len(new) + 1
                    dart = _other_end(pd, ends, (dart[0], (dart[1] + 2) % 4))
                rest = [a for a in pending if a not in new]
                if not rest:
                    break
                dart = ends[rest[0]][0]
                order.append(dart)
            code = []
            for x in pd.crossings:
                y = tuple(new[a] for a in x)
                code.append(min(y, y[2:] + y[:2]))
            key = tuple(sorted(code))
            if best is None or key < best:
                best = key
    return (best, pd.free_loops)


def from_braid(word: Sequence[int], strands: int | None = None) -> PlanarDiagram:
    """PD code of the closure of a braid word.

    Generator ``i`` (1-based) crosses positions i and i+1; a positive letter
    sends the strand from position i under the one from position i+1.
    """
    if strands is None:
        strands = max(abs(g) for g in word) + 1
    labels = list(range(1, strands + 1))
    start = list(labels)
    nxt = strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"generator {g} out of range for {strands} strands")
        a, b = labels[i], labels[i + 1]
        c, d = nxt, nxt + 1
        nxt += 2
        if g > 0:
            crossings.append((a, b, d, c))
        else:
            crossings.append((b, d, c, a))
        labels[i], labels[i + 1] = c, d
    # a strand the word never touches closes up into a free loop
    untouched = sum(1 for end, begin in zip(labels, start) if end == begin)
    rename = dict(zip(labels, start))
    crossings = [tuple(rename.get(e, e) for e in x) for x in crossings]
    return relabel(PlanarDiagram(tuple(crossings), untouched))
