"""Hypothesis strategies for graphs."""

from hypothesis import strategies as st

from chordal_msc.gen import FAMILIES, GenSpec, generate
from chordal_msc.graph import WeightedGraph


@st.composite
def chordal_graphs(draw, max_n=8, weights=("unit", "uniform", "exponential")):
    fam = draw(st.sampled_from(FAMILIES))
    n = draw(st.integers(1, max_n))
    if fam == "ktree":
        param = draw(st.integers(1, 4))
    elif fam == "interval":
        param = draw(st.sampled_from([0.5, 1.0, 2.0, 4.0]))
    else:
        param = draw(st.integers(1, 8))
    spec = GenSpec(fam, n, param, draw(st.sampled_from(weights)), 10, draw(st.integers(0, 2**31)))
    return generate(spec)


@st.composite
def any_graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    weights = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n))
    return WeightedGraph.from_edges(n, [p for p, b in zip(pairs, mask) if b], [float(w) for w in weights])
