import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from chordal_msc.chordal import clique_number, is_chordal, recognize_chordal
from chordal_msc.gen import (PRNG, GenSpec, generate, generate_full, intervals_overlap, sidecar_json)


def test_examples():
    t = generate(GenSpec("ktree", 5, 1, seed=7))
    assert t.m == 4 and is_chordal(t)  # a 1-tree is a tree
    assert generate(GenSpec("interval", 1, 1.0)).n == 1
    a = generate(GenSpec("ktree", 10, 3, seed=42))
    b = generate(GenSpec("ktree", 10, 3, seed=42))
    assert a == b


@given(st.sampled_from(["ktree", "interval", "subtree"]), st.integers(1, 30),
       st.sampled_from(["unit", "uniform", "exponential"]), st.integers(0, 10**6))
def test_always_chordal(fam, n, w, seed):
    param = {"ktree": 3, "interval": 2.0, "subtree": 6}[fam]
    g = generate(GenSpec(fam, n, param, w, 7, seed))
    assert g.n == n and is_chordal(g)
    assert all(1 <= x <= 7 for x in g.weights)
    if w == "unit":
        assert set(g.weights) <= {1.0}


@given(st.integers(1, 6), st.integers(1, 25), st.integers(0, 1000))
def test_ktree_clique_number(k, n, seed):
    g = generate(GenSpec("ktree", n, k, seed=seed))
    assert clique_number(g, recognize_chordal(g)) == min(n, k + 1)
    if n >= k + 1:
        assert g.m == k * (k + 1) // 2 + (n - k - 1) * k


@given(st.integers(1, 25), st.floats(0.1, 10), st.integers(0, 1000))
def test_interval_graph_matches_intervals(n, density, seed):
    gen = generate_full(GenSpec("interval", n, density, seed=seed))
    for u, v in combinations(range(n), 2):
        assert gen.graph.has_edge(u, v) == intervals_overlap(gen.intervals[u], gen.intervals[v])
    assert all(0 <= a <= 1 for a, _ in gen.intervals)


def test_spec_parse_and_json():
    s = GenSpec.parse("interval:n=12,param=2.5,weights=uniform,max_weight=4,seed=9")
    assert s == GenSpec("interval", 12, 2.5, "uniform", 4, 9)
    d = s.to_json()
    assert d["prng"] == PRNG
    assert GenSpec.from_json(json.loads(json.dumps(d))) == s
    side = json.loads(sidecar_json(generate_full(s)))
    assert side["spec"]["seed"] == 9 and len(side["intervals"]) == 12
    with pytest.raises(ValueError):
        GenSpec.parse("ktree:n=3,colour=2")


@pytest.mark.parametrize("kwargs", [
    dict(family="grid", n=3), dict(family="ktree", n=0), dict(family="ktree", n=3, param=1.5),
    dict(family="interval", n=3, param=0), dict(family="subtree", n=3, param=0),
    dict(family="ktree", n=3, weights="gauss"), dict(family="ktree", n=3, max_weight=0),
])
def test_invalid_specs(kwargs):
    with pytest.raises(ValueError):
        GenSpec(**kwargs)
