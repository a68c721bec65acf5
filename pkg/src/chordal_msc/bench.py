"""Benchmark harness: run MSC algorithms over generated instances and tabulate ratios."""

from __future__ import annotations

import math
import os
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .chordal import recognize_chordal
from .gen import GenSpec, generate
from .graph import Coloring, WeightedGraph, read_graph
from .msc import coverage_concat_msc, greedy_msc_4approx, msc_approx, solve_config_lp, exact_pricer
from .mkcs import DP_MAX_K, DP_MAX_N
from .chordal import clique_number
from .oracle import DEFAULT_BUDGET, OracleBudget, brute_msc

ALGORITHMS = ("greedy4", "coverage-concat", "lp")
RATIO_TOL = 1e-9


class BenchInvariantError(AssertionError):
    pass


@dataclass
class RunRecord:
    instance: str
    n: int
    m: int
    family: str
    seed: int | None
    algorithm: str
    params: dict = field(default_factory=dict)
    objective: float | None = None
    lp_value: float | None = None
    ratio_vs_lp: float | None = None
    oracle_value: float | None = None
    ratio_vs_oracle: float | None = None
    wall_time: float = 0.0
    iterations: int | None = None
    columns_generated: int | None = None
    colors: list[int] | None = None
    error: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Instance:
    name: str
    graph: WeightedGraph
    family: str
    seed: int | None


def load_instance(item: str) -> Instance:
    """A generator spec string (``family:n=..,...``) or a path to a graph file."""
    if os.path.exists(item):
        return Instance(os.path.basename(item), read_graph(item), "file", None)
    spec = GenSpec.parse(item)
    return Instance(spec.name, generate(spec), spec.family, spec.seed)


def _ratio(obj, ref):
    if obj is None or ref is None:
        return None
    if ref <= 0:
        return 1.0 if obj <= ref + RATIO_TOL else math.inf
    return obj / ref


def _lp_bound(g, peo):
    """Configuration-LP value when exact pricing is available, else None."""
    if clique_number(g, peo) - 1 > DP_MAX_K or g.n > DP_MAX_N:
        return None
    return solve_config_lp(g, peo, exact_pricer(g, peo)).cost


def run_algorithm(alg: str, g: WeightedGraph, peo, eps: float, c: float | None) -> tuple[Coloring, dict]:
    if alg == "greedy4":
        return greedy_msc_4approx(g, peo), {}
    if alg == "coverage-concat":
        return coverage_concat_msc(g, peo, c), {"c": c}
    if alg == "lp":
        col = msc_approx(g, eps, c, peo)
        return col, {"epsilon": eps, "c": c}
    raise ValueError(f"unknown algorithm {alg!r}")


def run_bench(items, algorithms=ALGORITHMS, eps: float = 0.1, c: float | None = None,
              budget: OracleBudget = DEFAULT_BUDGET) -> list[RunRecord]:
    """One record per (instance, algorithm), sorted by instance then algorithm.

    Failures of a single run are stored in the record's ``error`` field. A
    reported objective that disagrees with the emitted coloring, or a ratio
    below 1 beyond tolerance, raises :class:`BenchInvariantError`.
    """
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    records = []
    for item in items:
        inst = load_instance(item)
        g = inst.graph
        base = dict(instance=inst.name, n=g.n, m=g.m, family=inst.family, seed=inst.seed)
        try:
            peo = recognize_chordal(g)
        except ValueError as exc:
            for a in algorithms:
                records.append(RunRecord(algorithm=a, error=f"{type(exc).__name__}: {exc}", **base))
            continue
        lp = _lp_bound(g, peo)
        opt = brute_msc(g, budget).objective if g.n <= budget.max_msc_vertices else None
        for a in algorithms:
            rec = RunRecord(algorithm=a, lp_value=lp, oracle_value=opt, **base)
            t0 = time.perf_counter()
            try:
                col, params = run_algorithm(a, g, peo, eps, c)
            except Exception as exc:  # recorded, harness continues
                rec.error = f"{type(exc).__name__}: {exc}"
                rec.wall_time = time.perf_counter() - t0
                records.append(rec)
                continue
            rec.wall_time = time.perf_counter() - t0
            rec.params = {k: v for k, v in params.items() if v is not None}
            rec.colors = list(col.colors)
            rec.objective = col.objective
            if abs(col.recompute_objective(g) - col.objective) > 1e-9 * (1 + abs(col.objective)):
                raise BenchInvariantError(f"{inst.name}/{a}: objective does not match the coloring")
            rec.iterations = col.info.get("iterations")
            rec.columns_generated = col.info.get("columns_generated")
            rec.ratio_vs_lp = _ratio(col.objective, lp)
            rec.ratio_vs_oracle = _ratio(col.objective, opt)
            for r in (rec.ratio_vs_lp, rec.ratio_vs_oracle):
                if r is not None and r < 1 - RATIO_TOL:
                    raise BenchInvariantError(f"{inst.name}/{a}: ratio {r} below 1")
            records.append(rec)
    records.sort(key=lambda r: (r.instance, r.algorithm))
    return records


def aggregate(records: list[RunRecord]) -> list[dict]:
    rows = []
    for a in sorted({r.algorithm for r in records}):
        rs = [r for r in records if r.algorithm == a]
        row = {"algorithm": a, "runs": len(rs), "errors": sum(r.error is not None for r in rs)}
        for key in ("ratio_vs_lp", "ratio_vs_oracle"):
            vals = [getattr(r, key) for r in rs if getattr(r, key) is not None]
            row[f"mean_{key}"] = float(np.mean(vals)) if vals else None
            row[f"max_{key}"] = float(np.max(vals)) if vals else None
        rows.append(row)
    return rows


def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def format_table(records: list[RunRecord], summary: list[dict]) -> str:
    cols = ["instance", "algorithm", "n", "objective", "lp_value", "ratio_vs_lp",
            "oracle_value", "ratio_vs_oracle", "wall_time", "error"]
    rows = [[_cell(getattr(r, k)) for k in cols] for r in records]
    out = [_align(cols, rows)]
    scols = ["algorithm", "runs", "errors", "mean_ratio_vs_lp", "max_ratio_vs_lp",
             "mean_ratio_vs_oracle", "max_ratio_vs_oracle"]
    out.append(_align(scols, [[_cell(s[k]) for k in scols] for s in summary]))
    return "\n\n".join(out) + "\n"


def _align(header, rows):
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)
