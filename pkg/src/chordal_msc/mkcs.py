"""Maximum k-colorable subgraph on chordal graphs.

Contents: the K-COLOR-LP relaxation over a PEO, its randomized rounding with
damping ``f`` and a derandomized version over a pairwise-independent space,
an exact dynamic program over the clique tree for small ``k``, the PTAS
dispatcher, and the greedy maximum-coverage baseline.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .chordal import (PerfectEliminationOrder, clique_number, color_subset,
                      max_weight_independent_set, recognize_chordal)
from .cliquetree import CliqueTreeRepresentation, build_clique_tree
from .graph import WeightedGraph, is_proper_partial
from .lp import LinearProgram, solve
from .pairwise import PairwiseSpace

log = logging.getLogger(__name__)

DP_MAX_K = 8
DP_MAX_N = 60


class DpTooLargeError(ValueError):
    """Exact DP refused: k or n above the configured caps."""


@dataclass(frozen=True)
class KColorLpSolution:
    x: np.ndarray
    k: int
    objective: float
    lp: LinearProgram | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class MkcsResult:
    selected: frozenset[int]
    weight: float
    witness: Mapping[int, int]
    k: int
    method: str = ""
    info: dict = field(default_factory=dict, compare=False)


def make_result(g: WeightedGraph, selected, witness: Mapping[int, int], k: int,
                method: str, weights: Sequence[float] | None = None, **info) -> MkcsResult:
    """Build an :class:`MkcsResult` after checking the witness is a proper k-coloring of G[S]."""
    selected = frozenset(selected)
    if set(witness) != selected:
        raise AssertionError("witness must color exactly the selected vertices")
    if not is_proper_partial(g, witness, max_colors=k):
        raise AssertionError(f"witness is not a proper {k}-coloring of G[S]")
    w = g.weights if weights is None else weights
    weight = float(sum(w[v] for v in selected))
    return MkcsResult(selected, weight, dict(witness), k, method, info)


def _chordal_result(g, peo, selected, k, method, weights=None, **info):
    return make_result(g, selected, color_subset(peo, selected), k, method, weights, **info)


# ------------------------------------------------------------------ K-COLOR-LP

def kcolor_lp(g: WeightedGraph, peo: PerfectEliminationOrder, k: int,
              weights: Sequence[float] | None = None) -> LinearProgram:
    if k < 1:
        raise ValueError("k must be a positive integer")
    w = g.weights if weights is None else weights
    lp = LinearProgram("max")
    for v in range(g.n):
        lp.add_variable(w[v], 0.0, 1.0, name=f"x_{v}")
    for v in range(g.n):
        row = {v: 1.0}
        row.update({u: 1.0 for u in peo.left[v]})
        lp.add_constraint(row, "<=", k, name=f"left_{v}")
    return lp


def solve_kcolor_lp(g: WeightedGraph, peo: PerfectEliminationOrder, k: int,
                    weights: Sequence[float] | None = None) -> KColorLpSolution:
    """Optimal solution of max sum w_v x_v s.t. x_v + x(N_left(v)) <= k, 0 <= x <= 1."""
    lp = kcolor_lp(g, peo, k, weights)
    sol = solve(lp)
    if not sol.optimal:
        raise RuntimeError(f"K-COLOR-LP unexpectedly {sol.status}")
    x = np.clip(sol.x, 0.0, 1.0)
    return KColorLpSolution(x, k, sol.objective, lp)


def kcolor_lp_violation(peo: PerfectEliminationOrder, x: Sequence[float], k: int) -> float:
    """Largest violation of the box and left-neighbourhood constraints (0 if feasible)."""
    x = np.asarray(x, dtype=float)
    worst = max(0.0, float(-x.min(initial=0.0)), float(x.max(initial=0.0) - 1.0))
    for v in range(len(x)):
        load = x[v] + sum(x[u] for u in peo.left[v])
        worst = max(worst, load - k)
    return worst


# ------------------------------------------------------------------ rounding

def default_damping(k: int) -> float:
    return k ** (-1.0 / 3.0)


def sweep(peo: PerfectEliminationOrder, candidates, k: int) -> set[int]:
    """Greedy pass in PEO order: keep a candidate iff fewer than k chosen left neighbours."""
    chosen: set[int] = set()
    for v in peo.order:
        if v in candidates and sum(1 for u in peo.left[v] if u in chosen) <= k - 1:
            chosen.add(v)
    return chosen


def _check_lp(peo, lp: KColorLpSolution, k):
    if lp.k != k:
        raise ValueError(f"LP solution was computed for k={lp.k}, not {k}")
    if kcolor_lp_violation(peo, lp.x, k) > 1e-7:
        raise ValueError("LP solution is infeasible for K-COLOR-LP")


def round_mkcs(g: WeightedGraph, peo: PerfectEliminationOrder, lp: KColorLpSolution, k: int,
               f: float | None = None, rng: np.random.Generator | int | None = 0) -> MkcsResult:
    """One run of the randomized rounding: sample with probability (1-f)*x_v, then sweep."""
    f = default_damping(k) if f is None else float(f)
    if not 0.0 <= f <= 1.0:
        raise ValueError("damping f must lie in [0, 1]")
    _check_lp(peo, lp, k)
    rng = np.random.default_rng(rng)
    probs = np.clip((1.0 - f) * lp.x, 0.0, 1.0)
    sampled = set(np.nonzero(rng.random(g.n) < probs)[0].tolist())
    chosen = sweep(peo, sampled, k)
    return _chordal_result(g, peo, chosen, k, "lp-round", f=f, lp_objective=lp.objective)


def round_mkcs_derandomized(g: WeightedGraph, peo: PerfectEliminationOrder,
                            lp: KColorLpSolution, k: int, f: float | None = None,
                            quantization: float = 1 / 128,
                            weights: Sequence[float] | None = None) -> MkcsResult:
    """Best outcome of the rounding over every seed of a pairwise-independent space.

    Sampling probabilities are rounded down to multiples of ``1/p``; ties between
    seeds go to the smallest seed index.
    """
    f = default_damping(k) if f is None else float(f)
    if not 0.0 <= f <= 1.0:
        raise ValueError("damping f must lie in [0, 1]")
    _check_lp(peo, lp, k)
    w = np.asarray(g.weights if weights is None else weights, dtype=float)
    space = PairwiseSpace(np.clip((1.0 - f) * lp.x, 0.0, 1.0), quantization)
    best_seed, best_weight = 0, -math.inf
    left = [np.asarray(peo.left[v], dtype=np.int64) for v in range(g.n)]
    for first, Y in space.batches():
        S = np.zeros_like(Y)
        for v in peo.order:
            if left[v].size:
                ok = S[:, left[v]].sum(axis=1) <= k - 1
                S[:, v] = Y[:, v] & ok
            else:
                S[:, v] = Y[:, v]
        totals = S @ w if g.n else np.zeros(len(Y))
        i = int(np.argmax(totals))
        if totals[i] > best_weight:
            best_seed, best_weight = first + i, float(totals[i])
    chosen = sweep(peo, set(np.nonzero(space.sample(best_seed))[0].tolist()), k)
    res = _chordal_result(g, peo, chosen, k, "lp-round-derandomized", weights,
                          seed=best_seed, p=space.p, f=f, lp_objective=lp.objective)
    if f == default_damping(k):
        bound = (1.0 - 2.0 * f) * lp.objective
        res.info["rounding_bound"] = bound
        if res.weight < bound - 1e-9 * (1.0 + abs(bound)):
            raise AssertionError(f"derandomized rounding weight {res.weight} below {bound}")
    return res


# ------------------------------------------------------------------ exact DP

def exact_mkcs_dp(rep: CliqueTreeRepresentation, k: int, weights: Sequence[float] | None = None,
                  max_k: int = DP_MAX_K, max_n: int = DP_MAX_N) -> MkcsResult:
    """Exact maximum-weight k-colorable subgraph by dynamic programming over the clique tree.

    A vertex set S is k-colorable iff every tree node lies in at most k of the
    subtrees {T_v : v in S}. A DP state is a tree node together with the
    (at most k) selected vertices whose subtrees contain it. If ``k`` is at
    least the clique number the whole graph is returned without running the DP.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    g = rep.graph
    w = g.weights if weights is None else weights
    if k >= rep.max_bag():
        return _chordal_result(g, rep.peo, range(g.n), k, "exact-dp", weights, trivial=True)
    if k > max_k or g.n > max_n:
        raise DpTooLargeError(f"exact DP capped at k <= {max_k}, n <= {max_n} (got k={k}, n={g.n})")

    nodes = rep.num_nodes
    parent = [-1] * nodes
    order = []
    seen = [False] * nodes
    stack = [0]
    seen[0] = True
    while stack:
        a = stack.pop()
        order.append(a)
        for b in rep.tree_adj[a]:
            if not seen[b]:
                seen[b] = True
                parent[b] = a
                stack.append(b)
    children = [[] for _ in range(nodes)]
    for b in order[1:]:
        children[parent[b]].append(b)

    bag_mask = [0] * nodes
    for a, bag in enumerate(rep.bags):
        for v in bag:
            bag_mask[a] |= 1 << v

    def mask_weight(mask):
        total = 0.0
        v = 0
        while mask:
            if mask & 1:
                total += w[v]
            mask >>= 1
            v += 1
        return total

    table: list[dict[int, float]] = [None] * nodes
    # best[b][projection] = (value, state of b) for merging child b into its parent
    best: list[dict[int, tuple[float, int]]] = [None] * nodes
    for a in reversed(order):
        bag = sorted(rep.bags[a])
        vals: dict[int, float] = {}
        for size in range(min(k, len(bag)) + 1):
            for combo in combinations(bag, size):
                mask = 0
                for v in combo:
                    mask |= 1 << v
                val = sum(w[v] for v in combo)
                for b in children[a]:
                    val += best[b][mask & bag_mask[b]][0]
                vals[mask] = val
        table[a] = vals
        if parent[a] >= 0:
            sep = bag_mask[a] & bag_mask[parent[a]]
            proj: dict[int, tuple[float, int]] = {}
            for mask in sorted(vals):
                key = mask & sep
                val = vals[mask] - mask_weight(key)
                if key not in proj or val > proj[key][0]:
                    proj[key] = (val, mask)
            best[a] = proj

    root_mask = max(sorted(table[0]), key=lambda m: table[0][m])
    chosen_mask = 0
    stack = [(0, root_mask)]
    while stack:
        a, mask = stack.pop()
        chosen_mask |= mask
        for b in children[a]:
            stack.append((b, best[b][mask & bag_mask[b]][1]))
    selected = [v for v in range(g.n) if chosen_mask >> v & 1]
    return _chordal_result(g, rep.peo, selected, k, "exact-dp", weights, dp_value=table[0][root_mask])


# ------------------------------------------------------------------ PTAS

def ptas_threshold(eps: float) -> float:
    return 8.0 / eps ** 3


def mkcs_ptas(g: WeightedGraph, k: int, eps: float, peo: PerfectEliminationOrder | None = None,
              weights: Sequence[float] | None = None, max_k: int = DP_MAX_K,
              max_n: int = DP_MAX_N, rep: CliqueTreeRepresentation | None = None,
              warn: bool = True) -> MkcsResult:
    """(1-eps)-approximation: exact DP when k <= 8/eps^3, derandomized LP rounding otherwise.

    Raises :class:`~chordal_msc.chordal.NotChordalError` on non-chordal input.
    When the exact DP is called for but refused by its caps, the derandomized
    rounding is used instead and ``info['dp_refused']`` is set; the (1-eps)
    guarantee then no longer applies. ``warn=False`` demotes the fallback
    message to debug level for callers that report it once themselves.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if peo is None:
        peo = recognize_chordal(g)
    refused = False
    if k <= ptas_threshold(eps) or k >= clique_number(g, peo):
        if rep is None:
            rep = build_clique_tree(g, peo)
        try:
            return exact_mkcs_dp(rep, k, weights, max_k, max_n)
        except DpTooLargeError as exc:
            log.log(logging.WARNING if warn else logging.DEBUG, "%s; falling back to LP rounding", exc)
            refused = True
    lp = solve_kcolor_lp(g, peo, k, weights)
    res = round_mkcs_derandomized(g, peo, lp, k, weights=weights)
    res.info["dp_refused"] = refused
    return res


# ------------------------------------------------------------------ baseline

def greedy_max_coverage_mkcs(g: WeightedGraph, peo: PerfectEliminationOrder, k: int,
                             weights: Sequence[float] | None = None) -> MkcsResult:
    """k rounds of extracting a max-weight independent set among uncovered vertices."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    uncovered = set(range(g.n))
    witness: dict[int, int] = {}
    for color in range(1, k + 1):
        chosen = max_weight_independent_set(g, peo, weights, uncovered)
        if not chosen:
            break
        for v in chosen:
            witness[v] = color
        uncovered -= chosen
    return make_result(g, witness.keys(), witness, k, "greedy-coverage", weights)
