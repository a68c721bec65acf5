"""Command-line interface.

Exit codes: 0 success, 1 negative answer (graph not chordal), 2 usage or
parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import __version__
from .bench import ALGORITHMS, BenchInvariantError, aggregate, format_table, run_bench
from .chordal import NotChordalError, recognize_chordal
from .gen import FAMILIES, WEIGHT_MODES, GenSpec, generate_full, sidecar_json
from .graph import ColoringError, GraphFormatError, format_graph, read_graph
from .mkcs import (DP_MAX_K, DP_MAX_N, exact_mkcs_dp, greedy_max_coverage_mkcs, kcolor_lp,
                   mkcs_ptas, round_mkcs_derandomized, solve_kcolor_lp)
from .cliquetree import build_clique_tree
from .msc import coverage_concat_msc, greedy_msc_4approx, msc_approx, msc_round
from .oracle import OracleBudget, OracleBudgetError, brute_mkcs, brute_msc, k_coloring

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
SIG_DIGITS = 9


class UsageError(Exception):
    pass


def round_floats(obj):
    """Round every float to 9 significant digits (recursively); the result survives a JSON round trip."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {str(k): round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def emit_json(obj) -> str:
    return json.dumps(round_floats(obj), sort_keys=True)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}:{_fmt(x)}" for k, x in v.items())
    return "-" if v is None else str(v)


def _report(args, payload: dict, text_keys=None):
    if args.json:
        print(emit_json(payload))
        return
    for k in text_keys or payload:
        print(f"{k}: {_fmt(payload.get(k))}")


def _dump_lp(args, lp):
    if args.dump_lp and lp is not None:
        with open(args.dump_lp, "w") as fh:
            fh.write(lp.to_lp_text())


def _one_based(vertices):
    return [v + 1 for v in sorted(vertices)]


def _not_chordal(args, exc: NotChordalError) -> int:
    cycle = [v + 1 for v in exc.cycle]
    if args.json:
        print(emit_json({"chordal": False, "cycle": cycle}))
    else:
        print("not chordal")
        print("induced cycle: " + " ".join(map(str, cycle)))
    return EXIT_NO


# ------------------------------------------------------------------ commands

def cmd_recognize(args) -> int:
    g = read_graph(args.graph)
    try:
        peo = recognize_chordal(g)
    except NotChordalError as exc:
        return _not_chordal(args, exc)
    order = [v + 1 for v in peo.order]
    if args.json:
        print(emit_json({"chordal": True, "peo": order}))
    else:
        print("chordal")
        print("peo: " + " ".join(map(str, order)))
    return EXIT_OK


def cmd_mkcs(args) -> int:
    g = read_graph(args.graph)
    if args.k < 1:
        raise UsageError("--k must be positive")
    if not 0 < args.epsilon <= 1:
        raise UsageError("--epsilon must lie in (0, 1]")
    try:
        peo = recognize_chordal(g)
    except NotChordalError as exc:
        return _not_chordal(args, exc)
    extra = {}
    if args.method == "exact":
        res = exact_mkcs_dp(build_clique_tree(g, peo), args.k, max_k=args.max_dp_k, max_n=args.max_dp_n)
    elif args.method == "lp-round":
        lp = solve_kcolor_lp(g, peo, args.k)
        _dump_lp(args, lp.lp)
        res = round_mkcs_derandomized(g, peo, lp, args.k)
        extra = {"lp_objective": lp.objective, "seed_index": res.info.get("seed")}
    elif args.method == "ptas":
        res = mkcs_ptas(g, args.k, args.epsilon, peo, max_k=args.max_dp_k, max_n=args.max_dp_n)
        extra = {"dp_refused": res.info.get("dp_refused", False)}
    else:
        res = greedy_max_coverage_mkcs(g, peo, args.k)
    if args.dump_lp and args.method != "lp-round":
        _dump_lp(args, kcolor_lp(g, peo, args.k))
    payload = {"weight": res.weight, "k": res.k, "method": res.method,
               "selected": _one_based(res.selected),
               "witness": {str(v + 1): c for v, c in sorted(res.witness.items())}, **extra}
    _report(args, payload, ["weight", "k", "method", "selected", *extra])
    return EXIT_OK


def cmd_msc(args) -> int:
    g = read_graph(args.graph)
    if not 0 < args.epsilon < 1:
        raise UsageError("--epsilon must lie in (0, 1)")
    try:
        peo = recognize_chordal(g)
    except NotChordalError as exc:
        return _not_chordal(args, exc)
    lp_cost = None
    iterations = columns = 0
    if args.method == "lp":
        col = msc_approx(g, args.epsilon, args.c, peo)
        info = col.info
        sol = info["lp_solution"]
        if args.randomized and g.n:
            col = msc_round(g, peo, sol, rng=args.seed, c=info.get("c"))
        lp_cost = info["lp_cost"]
        iterations = info["iterations"]
        columns = info["columns_generated"]
        _dump_lp(args, getattr(sol, "lp", None))
    elif args.method == "greedy4":
        col = greedy_msc_4approx(g, peo)
    else:
        col = coverage_concat_msc(g, peo, args.c)
    if abs(col.recompute_objective(g) - col.objective) > 1e-9 * (1 + abs(col.objective)):
        raise ColoringError("objective does not match the coloring")
    ratio = None
    if lp_cost is not None:
        ratio = col.objective / lp_cost if lp_cost > 0 else 1.0
    payload = {"objective": col.objective,
               "colors": {str(v + 1): c for v, c in enumerate(col.colors)},
               "bound_ratio_vs_lp": ratio, "iterations": iterations,
               "columns_generated": columns, "method": args.method, "lp_cost": lp_cost}
    if args.json:
        print(emit_json(payload))
    else:
        for k in ("objective", "lp_cost", "bound_ratio_vs_lp", "iterations", "columns_generated"):
            print(f"{k}: {_fmt(payload[k])}")
        print("colors: " + " ".join(str(c) for c in col.colors))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    budget = OracleBudget(args.max_vertices or 12, args.max_vertices or 10, args.time_cap)
    if args.problem == "msc":
        col = brute_msc(g, budget)
        payload = {"objective": col.objective, "colors": {str(v + 1): c for v, c in enumerate(col.colors)}}
        _report(args, payload)
        return EXIT_OK
    if args.k is None or args.k < 1:
        raise UsageError("--k is required and must be positive")
    if args.problem == "mkcs":
        res = brute_mkcs(g, args.k, budget)
        _report(args, {"weight": res.weight, "k": args.k, "selected": _one_based(res.selected)})
        return EXIT_OK
    if g.n > budget.max_mkcs_vertices:
        raise OracleBudgetError(f"n={g.n} exceeds oracle budget {budget.max_mkcs_vertices}")
    col = k_coloring(g, args.k)
    payload = {"colorable": col is not None, "k": args.k,
               "colors": None if col is None else {str(v + 1): c for v, c in sorted(col.items())}}
    _report(args, payload)
    return EXIT_OK if col is not None else EXIT_NO


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.family, args.n, args.param, args.weights, args.max_weight, args.seed)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    gen = generate_full(spec)
    text = format_graph(gen.graph, [spec.name, f"prng {gen.meta['prng']}"])
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        with open(args.output + ".json", "w") as fh:
            fh.write(sidecar_json(gen) + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    items = list(args.spec or [])
    if args.specs_file:
        with open(args.specs_file) as fh:
            items += [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    algorithms = args.algorithms.split(",") if args.algorithms else list(ALGORITHMS)
    try:
        for it in items:
            if ":" in it:
                GenSpec.parse(it)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad spec: {exc}") from exc
    records = run_bench(items, algorithms, args.epsilon, args.c)
    summary = aggregate(records)
    doc = {"records": [r.to_json() for r in records], "summary": summary}
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(emit_json(doc) + "\n")
    if args.json:
        print(emit_json(doc))
    else:
        sys.stdout.write(format_table(records, summary))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=d if suppress else 0, help="random seed (default 0)")
    p.add_argument("--json", action="store_true", default=d if suppress else False, help="emit JSON")
    p.add_argument("--dump-lp", metavar="PATH", default=d, help="write the LP solved (if any) in LP format")
    p.add_argument("-v", "--verbose", action="store_true", default=d if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chordal-msc", description="Sum coloring and k-colorable subgraphs of chordal graphs.")
    p.add_argument("--version", action="version", version=__version__)
    _global_flags(p, False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", parents=[common], help="test chordality; print a PEO or an induced cycle")
    s.add_argument("graph")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("mkcs", parents=[common], help="maximum-weight k-colorable subgraph")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--epsilon", type=float, default=0.5)
    s.add_argument("--method", choices=["exact", "lp-round", "ptas", "greedy"], default="ptas")
    s.add_argument("--max-dp-k", type=int, default=DP_MAX_K)
    s.add_argument("--max-dp-n", type=int, default=DP_MAX_N)
    s.set_defaults(func=cmd_mkcs)

    s = sub.add_parser("msc", parents=[common], help="minimum weighted sum coloring")
    s.add_argument("graph")
    s.add_argument("--epsilon", type=float, default=0.1)
    s.add_argument("--method", choices=["lp", "greedy4", "coverage-concat"], default="lp")
    s.add_argument("--c", type=float, default=None, help="override the geometric growth factor")
    s.add_argument("--randomized", action="store_true",
                   help="with --method lp: one randomized rounding drawn from --seed instead of the deterministic one")
    s.set_defaults(func=cmd_msc)

    s = sub.add_parser("oracle", parents=[common], help="exhaustive reference solvers (small graphs)")
    s.add_argument("problem", choices=["msc", "mkcs", "kcolor"])
    s.add_argument("graph")
    s.add_argument("--k", type=int)
    s.add_argument("--max-vertices", type=int)
    s.add_argument("--time-cap", type=float, default=60.0)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", parents=[common], help="generate a random chordal graph")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--param", type=float, default=2)
    s.add_argument("--weights", choices=WEIGHT_MODES, default="unit")
    s.add_argument("--max-weight", type=int, default=10)
    s.add_argument("-o", "--output", help="graph file path; a .json sidecar is written next to it")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", parents=[common], help="compare MSC algorithms on a set of instances")
    s.add_argument("spec", nargs="*", help="generator spec family:n=..,param=..,weights=..,seed=.. or a graph file")
    s.add_argument("--specs-file")
    s.add_argument("--algorithms", help=f"comma-separated subset of {','.join(ALGORITHMS)}")
    s.add_argument("--epsilon", type=float, default=0.1)
    s.add_argument("--c", type=float, default=None)
    s.add_argument("-o", "--output", help="write the JSON table here")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, OracleBudgetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, BenchInvariantError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
