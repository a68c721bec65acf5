import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chordal_msc.chordal import NotChordalError, color_subset, recognize_chordal
from chordal_msc.cliquetree import build_clique_tree
from chordal_msc.gen import GenSpec, generate
from chordal_msc.graph import WeightedGraph
from chordal_msc.mkcs import (DpTooLargeError, KColorLpSolution, default_damping, exact_mkcs_dp,
                              greedy_max_coverage_mkcs, kcolor_lp_violation, make_result, mkcs_ptas,
                              ptas_threshold, round_mkcs, round_mkcs_derandomized, solve_kcolor_lp, sweep)
from chordal_msc.oracle import brute_mkcs, k_coloring
from strategies import chordal_graphs

K3 = WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
P3 = WeightedGraph.from_edges(3, [(0, 1), (1, 2)])
ONE = WeightedGraph.from_edges(1, [])


def _check_result(g, res, k):
    assert set(res.witness) == set(res.selected)
    assert all(1 <= c <= k for c in res.witness.values())
    assert all(res.witness[u] != res.witness[v] for u in res.selected for v in g.adj[u] if v in res.selected)
    assert res.weight == pytest.approx(g.weight_of(res.selected))


def test_kcolor_lp_examples():
    peo = recognize_chordal(K3)
    lp = solve_kcolor_lp(K3, peo, 3)
    assert lp.objective == pytest.approx(3)
    assert np.allclose(lp.x, 1)
    assert solve_kcolor_lp(K3, peo, 2).objective == pytest.approx(2)
    assert solve_kcolor_lp(ONE, recognize_chordal(ONE), 1).x[0] == pytest.approx(1)


def test_dp_examples():
    assert exact_mkcs_dp(build_clique_tree(K3, recognize_chordal(K3)), 2).weight == 2
    res = exact_mkcs_dp(build_clique_tree(P3, recognize_chordal(P3)), 1)
    assert res.weight == 2 and res.selected == {0, 2}


def test_dp_caps():
    g = generate(GenSpec("ktree", 20, 10, seed=1))
    rep = build_clique_tree(g, recognize_chordal(g))
    with pytest.raises(DpTooLargeError):
        exact_mkcs_dp(rep, 9)
    with pytest.raises(DpTooLargeError):
        exact_mkcs_dp(rep, 3, max_n=10)
    assert exact_mkcs_dp(rep, 11).weight == g.total_weight()  # k >= omega needs no DP
    assert exact_mkcs_dp(rep, 9, max_k=9).weight <= g.total_weight()
    with pytest.raises(ValueError):
        exact_mkcs_dp(rep, 0)


@settings(max_examples=80)
@given(chordal_graphs(max_n=10), st.integers(1, 3))
def test_dp_equals_brute_force(g, k):
    rep = build_clique_tree(g, recognize_chordal(g))
    res = exact_mkcs_dp(rep, k)
    _check_result(g, res, k)
    assert res.weight == brute_mkcs(g, k).weight


@given(chordal_graphs(max_n=10), st.integers(1, 4))
def test_lp_is_relaxation(g, k):
    peo = recognize_chordal(g)
    lp = solve_kcolor_lp(g, peo, k)
    assert kcolor_lp_violation(peo, lp.x, k) <= 1e-9
    assert lp.objective >= brute_mkcs(g, k).weight - 1e-7


@given(chordal_graphs(max_n=10), st.integers(1, 4), st.integers(0, 1000))
def test_sweep_leaves_small_left_neighbourhoods(g, k, seed):
    peo = recognize_chordal(g)
    cand = set(np.nonzero(np.random.default_rng(seed).random(g.n) < 0.7)[0].tolist())
    S = sweep(peo, cand, k)
    assert S <= cand
    for v in S:
        assert len([u for u in peo.left[v] if u in S]) <= k - 1
    assert max(color_subset(peo, S).values(), default=0) <= k


@given(chordal_graphs(max_n=10), st.integers(1, 5), st.floats(0, 1), st.integers(0, 99))
def test_round_mkcs_is_feasible(g, k, f, seed):
    peo = recognize_chordal(g)
    lp = solve_kcolor_lp(g, peo, k)
    _check_result(g, round_mkcs(g, peo, lp, k, f, seed), k)


def test_round_integral_lp_with_zero_damping():
    g = generate(GenSpec("interval", 9, 2.0, "uniform", seed=4))
    peo = recognize_chordal(g)
    S = exact_mkcs_dp(build_clique_tree(g, peo), 2).selected
    x = np.array([1.0 if v in S else 0.0 for v in range(g.n)])
    lp = KColorLpSolution(x, 2, g.weight_of(S))
    assert round_mkcs(g, peo, lp, 2, f=0.0).selected == S
    assert round_mkcs_derandomized(g, peo, lp, 2, f=0.0).selected == S


def test_round_rejects_bad_input():
    peo = recognize_chordal(K3)
    lp = solve_kcolor_lp(K3, peo, 2)
    with pytest.raises(ValueError):
        round_mkcs(K3, peo, lp, 2, f=1.5)
    with pytest.raises(ValueError):
        round_mkcs(K3, peo, lp, 3)
    bad = KColorLpSolution(np.ones(3), 2, 3.0)
    with pytest.raises(ValueError):
        round_mkcs(K3, peo, bad, 2)


def test_round_empty_graph():
    e = WeightedGraph.from_edges(0, [])
    peo = recognize_chordal(e)
    lp = solve_kcolor_lp(e, peo, 1)
    assert round_mkcs(e, peo, lp, 1).selected == frozenset()
    assert round_mkcs_derandomized(e, peo, lp, 1).weight == 0


def test_k3_rounding_mean_matches_exact_expectation():
    """K3, k = 2, x = 2/3 each: empirical mean vs the expectation over all 8 samples."""
    peo = recognize_chordal(K3)
    k = 2
    f = default_damping(k)
    lp = KColorLpSolution(np.full(3, 2 / 3), k, 2.0)
    p = (1 - f) * 2 / 3
    exact = 0.0
    for bits in product([0, 1], repeat=3):
        prob = math.prod(p if b else 1 - p for b in bits)
        exact += prob * len(sweep(peo, {v for v in range(3) if bits[v]}, k))
    assert exact == pytest.approx(3 * p - p ** 3)
    rng = np.random.default_rng(0)
    vals = np.array([round_mkcs(K3, peo, lp, k, rng=rng).weight for _ in range(100_000)])
    se = vals.std() / math.sqrt(len(vals))
    assert abs(vals.mean() - exact) <= 3 * se
    # the analytic guarantee (1-f)(1-1/(f^2 k)) * 2 is negative here, so vacuous
    assert (1 - f) * (1 - 1 / (f * f * k)) * 2 < exact


@pytest.mark.parametrize("k", [27, 64])
def test_derandomized_bound_on_3_trees(k):
    for seed in range(4):
        g = generate(GenSpec("ktree", 30, 3, "uniform", seed=seed))
        peo = recognize_chordal(g)
        lp = solve_kcolor_lp(g, peo, k)
        res = round_mkcs_derandomized(g, peo, lp, k)
        _check_result(g, res, k)
        assert res.weight >= (1 - 2 * k ** (-1 / 3)) * lp.objective - 1e-9


def test_derandomized_k3_k27():
    peo = recognize_chordal(K3)
    lp = solve_kcolor_lp(K3, peo, 27)
    assert round_mkcs_derandomized(K3, peo, lp, 27).weight >= (1 - 2 / 3) * lp.objective


def test_derandomized_on_dense_graphs():
    for i in range(3):
        g = generate(GenSpec("ktree", 45, 32 + i, "uniform", seed=i))
        peo = recognize_chordal(g)
        lp = solve_kcolor_lp(g, peo, 27)
        res = round_mkcs_derandomized(g, peo, lp, 27)
        assert res.info["rounding_bound"] == pytest.approx((1 - 2 / 3) * lp.objective)
        assert res.weight >= res.info["rounding_bound"]


@given(chordal_graphs(max_n=9), st.integers(1, 3))
def test_ptas_small_k_is_exact(g, k):
    assert k <= ptas_threshold(0.5)
    assert mkcs_ptas(g, k, 0.5).weight == brute_mkcs(g, k).weight


def test_ptas_large_k_uses_rounding():
    for seed in range(3):
        g = generate(GenSpec("interval", 40, 8.0, "uniform", seed=seed))
        peo = recognize_chordal(g)
        res = mkcs_ptas(g, 30, 0.5)
        lp = solve_kcolor_lp(g, peo, 30)
        assert res.weight >= 0.5 * lp.objective
        _check_result(g, res, 30)
    g = generate(GenSpec("ktree", 12, 2, seed=1))
    assert mkcs_ptas(g, 2, 1.0).weight <= g.total_weight()


def test_ptas_dp_refusal_falls_back():
    g = generate(GenSpec("ktree", 20, 12, "uniform", seed=2))
    res = mkcs_ptas(g, 10, 0.5)
    assert res.info["dp_refused"] is True
    _check_result(g, res, 10)


def test_ptas_errors():
    c4 = WeightedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NotChordalError):
        mkcs_ptas(c4, 2, 0.5)
    with pytest.raises(ValueError):
        mkcs_ptas(K3, 2, 0.0)


def test_greedy_coverage_examples():
    peo = recognize_chordal(K3)
    assert greedy_max_coverage_mkcs(K3, peo, 2).weight == 2


@given(chordal_graphs(max_n=10), st.integers(1, 3))
def test_greedy_coverage_bound(g, k):
    peo = recognize_chordal(g)
    res = greedy_max_coverage_mkcs(g, peo, k)
    _check_result(g, res, k)
    opt = brute_mkcs(g, k).weight
    assert (1 - 1 / math.e) * opt - 1e-9 <= res.weight <= g.total_weight()


def test_make_result_rejects_bad_witness():
    with pytest.raises(AssertionError):
        make_result(K3, [0, 1], {0: 1, 1: 1}, 2, "x")
    with pytest.raises(AssertionError):
        make_result(K3, [0, 1], {0: 1, 1: 3}, 2, "x")
    with pytest.raises(AssertionError):
        make_result(K3, [0, 1], {0: 1}, 2, "x")
