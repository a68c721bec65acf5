"""Acceptance criteria, one test each; every test records a PASS/FAIL line in the terminal summary."""

import math
import time
from functools import lru_cache

import numpy as np
import pytest

import conftest
from chordal_msc import cli
from chordal_msc.chordal import recognize_chordal
from chordal_msc.cliquetree import build_clique_tree
from chordal_msc.gen import GenSpec, generate
from chordal_msc.graph import PROPER_CHECKS, Coloring, ColoringError, WeightedGraph
from chordal_msc.mkcs import (exact_mkcs_dp, greedy_max_coverage_mkcs, kcolor_lp_violation,
                              round_mkcs_derandomized, solve_kcolor_lp)
from chordal_msc.msc import (config_violation, coverage_concat_msc, greedy_msc_4approx, msc_approx,
                             msc_round, msc_round_derandomized, solve_config_lp)
from chordal_msc.oracle import brute_mkcs, brute_msc
from chordal_msc.pairwise import PairwiseSpace, next_prime
from chordal_msc.ratio import optimal_c, ratio_bound, sigma_expectation_check
from _instances import small_graphs
from _lpmsc import full_config_lp
from test_pairwise import exhaustive_pairwise_check


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def mkcs_batch():
    """Criterion-2 instances: 510 chordal graphs with n <= 10."""
    return small_graphs(510, 10, seed=20240601)


@lru_cache(maxsize=None)
def msc_batch():
    """Criterion-5 instances: 306 chordal graphs with n <= 8, unit and integer weights <= 10."""
    return small_graphs(306, 8, seed=20240602)


@lru_cache(maxsize=None)
def msc_optima():
    return [brute_msc(g).objective for _, g in msc_batch()]


def _clock():
    t0 = time.perf_counter()
    return lambda: time.perf_counter() - t0


def test_criterion_1_constants():
    elapsed = _clock()
    res = optimal_c(1, 1)
    c = res.c
    resid = abs(c * math.log(c) - c - 1)
    r = ratio_bound(1, 1, c)
    t = elapsed()
    ok = resid <= 1e-6 and 1.7955 <= r <= 1.7960 and t < 1
    record(1, ok, f"c*={c:.9g} |c ln c - c - 1|={resid:.2e} ratio={r:.9g} time={t:.3f}s")


def test_criterion_2_mkcs_dp_equals_oracle():
    elapsed = _clock()
    bad = checks = 0
    for spec, g in mkcs_batch():
        rep = build_clique_tree(g, recognize_chordal(g))
        for k in (1, 2, 3):
            checks += 1
            if exact_mkcs_dp(rep, k).weight != brute_mkcs(g, k).weight:
                bad += 1
    t = elapsed()
    ok = bad == 0 and len(mkcs_batch()) >= 500 and t < 120
    record(2, ok, f"instances={len(mkcs_batch())} checks={checks} mismatches={bad} time={t:.1f}s")


def _criterion_3_specs():
    rng = np.random.default_rng(20240603)
    specs = []
    for i in range(200):
        n = int(rng.integers(30, 61))
        seed = int(rng.integers(1 << 30))
        fam = i % 4
        if fam in (0, 1):
            spec = GenSpec("ktree", n, int(rng.integers(20, 41)), "uniform", 10, seed)
        elif fam == 2:
            spec = GenSpec("interval", n, float(rng.choice([6.0, 8.0, 10.0])), "uniform", 10, seed)
        else:
            spec = GenSpec("subtree", n, int(rng.integers(2, 6)), "exponential", 10, seed)
        specs.append((spec, 27 if i % 2 == 0 else 64))
    return specs


def test_criterion_3_derandomized_mkcs_bound():
    elapsed = _clock()
    violations, worst = 0, math.inf
    specs = _criterion_3_specs()
    for spec, k in specs:
        g = generate(spec)
        peo = recognize_chordal(g)
        lp = solve_kcolor_lp(g, peo, k)
        res = round_mkcs_derandomized(g, peo, lp, k)
        bound = (1 - 2 * k ** (-1 / 3)) * lp.objective
        worst = min(worst, res.weight - bound)
        if res.weight < bound - 1e-9 * (1 + bound):
            violations += 1
    t = elapsed()
    ok = violations == 0 and len(specs) >= 200 and t < 300
    record(3, ok, f"instances={len(specs)} k in {{27,64}} violations={violations} "
                  f"min slack={worst:.4g} time={t:.1f}s")


def test_criterion_4_lp_relaxations():
    elapsed = _clock()
    bad_k = bad_c = 0
    for _, g in mkcs_batch():
        peo = recognize_chordal(g)
        for k in (1, 2, 3):
            lp = solve_kcolor_lp(g, peo, k)
            if kcolor_lp_violation(peo, lp.x, k) > 1e-7 or lp.objective < brute_mkcs(g, k).weight - 1e-7:
                bad_k += 1
    for (_, g), opt in zip(msc_batch(), msc_optima()):
        sol = solve_config_lp(g, recognize_chordal(g))
        if max(config_violation(g, sol).values()) > 1e-7 or sol.cost > opt + 1e-7:
            bad_c += 1
    t = elapsed()
    record(4, bad_k == 0 and bad_c == 0,
           f"kcolor-lp violations={bad_k}/{3 * len(mkcs_batch())} "
           f"config-lp violations={bad_c}/{len(msc_batch())} time={t:.1f}s")


def test_criterion_5_end_to_end_ratio():
    elapsed = _clock()
    worst, bad = 0.0, 0
    for (_, g), opt in zip(msc_batch(), msc_optima()):
        obj = msc_approx(g, 0.1).objective
        ratio = obj / opt if opt > 0 else (1.0 if obj == 0 else math.inf)
        worst = max(worst, ratio)
        if obj > 1.80 * opt + 1e-9:
            bad += 1
    t = elapsed()
    ok = bad == 0 and len(msc_batch()) >= 300 and t < 600
    record(5, ok, f"instances={len(msc_batch())} violations={bad} worst ratio={worst:.6f} time={t:.1f}s")


def test_criterion_6_column_generation_fidelity():
    elapsed = _clock()
    batch = small_graphs(120, 6, seed=20240606, weights=("unit", "uniform", "exponential"))
    worst = 0.0
    for _, g in batch:
        cg = solve_config_lp(g, recognize_chordal(g)).cost
        worst = max(worst, abs(cg - full_config_lp(g)))
    ok = worst <= 1e-6 and len(batch) >= 100
    record(6, ok, f"instances={len(batch)} max |cg - full|={worst:.2e} time={elapsed():.1f}s")


def test_criterion_7_sigma_identity():
    elapsed = _clock()
    worst = 0.0
    for c in (2.0, 3.591):
        for k in (1, 7, 50):
            chk = sigma_expectation_check(c, k, 10 ** 6, rng=int(c * 1000) + k)
            worst = max(worst, abs(chk.ratio - 1))
    t = elapsed()
    record(7, worst <= 0.01 and t < 10, f"max relative error={worst:.2e} time={t:.2f}s")


def test_criterion_8_baselines():
    elapsed = _clock()
    bad_g = bad_c = 0
    for (_, g), opt in zip(msc_batch(), msc_optima()):
        if greedy_msc_4approx(g, recognize_chordal(g)).objective > 4 * opt + 1e-9:
            bad_g += 1
    for _, g in mkcs_batch():
        peo = recognize_chordal(g)
        for k in (1, 2, 3):
            if greedy_max_coverage_mkcs(g, peo, k).weight < (1 - 1 / math.e) * brute_mkcs(g, k).weight - 1e-9:
                bad_c += 1
    record(8, bad_g == 0 and bad_c == 0,
           f"greedy4 violations={bad_g} coverage violations={bad_c} time={elapsed():.1f}s")


def test_criterion_9_pairwise_independence():
    elapsed = _clock()
    rng = np.random.default_rng(20240609)
    spaces = bad = 0
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        for n in range(1, min(p, 20) + 1):
            sp = PairwiseSpace(rng.random(n), quantization=1 / p)
            assert sp.p == p == next_prime(max(n, p))
            spaces += 1
            if not exhaustive_pairwise_check(sp):
                bad += 1
    record(9, bad == 0, f"spaces={spaces} (all n <= min(p, 20), p <= 23) failures={bad} time={elapsed():.1f}s")


def _independent_proper(g: WeightedGraph, colors) -> bool:
    return (len(colors) == g.n and all(c >= 1 for c in colors)
            and all(colors[u] != colors[v] for u, v in g.edges()))


def test_criterion_10_properness(tmp_path, capsys):
    elapsed = _clock()
    before = PROPER_CHECKS["count"]
    emitted = []
    for _, g in msc_batch()[:60]:
        peo = recognize_chordal(g)
        col = msc_approx(g, 0.1, peo=peo)
        sol = col.info["lp_solution"]
        emitted += [col, msc_round(g, peo, sol, rng=1), msc_round_derandomized(g, peo, sol),
                    greedy_msc_4approx(g, peo), coverage_concat_msc(g, peo), brute_msc(g)]
        emitted[-6:] = [(g, c) for c in emitted[-6:]]
    checked = PROPER_CHECKS["count"] - before
    independent_ok = all(_independent_proper(g, c.colors) for g, c in emitted)
    path = tmp_path / "g.txt"
    path.write_text("p 4 5\ne 1 2\ne 2 3\ne 3 1\ne 3 4\ne 2 4\n")
    cli_ok = all(cli.main(["msc", "--json", "--method", m, str(path)]) == 0
                 for m in ("lp", "greedy4", "coverage-concat"))
    capsys.readouterr()
    tri = WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    try:
        Coloring.of(tri, [1, 2, 1])
        rejects = False
    except ColoringError:
        rejects = True
    ok = independent_ok and checked >= len(emitted) and cli_ok and rejects
    record(10, ok, f"colorings={len(emitted)} proper-checks={checked} independent recheck={independent_ok} "
                   f"improper rejected={rejects} session checks={PROPER_CHECKS['count']} time={elapsed():.1f}s")
