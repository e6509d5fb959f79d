"""Strategies and small utilities shared by the test modules."""

import random

from hypothesis import strategies as st

from skeinforge.diagram import PlanarDiagram, from_braid


@st.composite
def braid_words(draw, max_strands=4, max_len=9):
    strands = draw(st.integers(2, max_strands))
    gens = st.integers(1, strands - 1)
    word = draw(st.lists(st.tuples(gens, st.booleans()), min_size=1, max_size=max_len))
    word = [g if pos else -g for g, pos in word]
    # every generator present keeps the closure connected
    for g in range(1, strands):
        if g not in map(abs, word):
            word.append(g)
    return word, strands


def braid_diagram(word_strands):
    word, strands = word_strands
    return from_braid(word, strands)


def scramble(pd: PlanarDiagram, seed: int) -> PlanarDiagram:
    """Same diagram with labels permuted, crossings reordered and half-turned."""
    rng = random.Random(seed)
    labels = pd.edges
    perm = dict(zip(labels, rng.sample(range(1, 3 * len(labels) + 2), len(labels))))
    out = []
    for x in pd.crossings:
        y = tuple(perm[a] for a in x)
        if rng.random() < 0.5:
            y = (y[2], y[3], y[0], y[1])
        out.append(y)
    rng.shuffle(out)
    return PlanarDiagram(tuple(out), pd.free_loops)


def bracket_times(b, shift=0, scale=1):
    return {e + shift: scale * v for e, v in b.items()}


def bracket_add(*terms):
    total = {}
    for t in terms:
        for e, v in t.items():
            total[e] = total.get(e, 0) + v
    return {e: v for e, v in sorted(total.items()) if v}
