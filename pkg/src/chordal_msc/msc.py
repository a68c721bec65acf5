"""Minimum sum coloring through the configuration LP.

The LP has a variable ``x[v, k]`` (vertex v gets color k) and one variable
``z[C, k]`` per generated column: a set C that is colorable with the first
``floor(gamma*k)`` colors. Columns are produced lazily by an MkCS oracle run
on the duals of the coverage rows. A fractional solution is rounded by
concatenating sampled color-class blocks of geometrically growing width.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .chordal import (PerfectEliminationOrder, clique_number, color_subset,
                      max_weight_independent_set, recognize_chordal)
from .cliquetree import CliqueTreeRepresentation, build_clique_tree
from .graph import Coloring, WeightedGraph, is_proper_partial
from .lp import TOL, Column, LinearProgram, reduced_cost, solve_with_column_generation
from .mkcs import DP_MAX_K, DP_MAX_N, MkcsResult, exact_mkcs_dp, mkcs_ptas
from .ratio import c_upper_limit, optimal_c, ratio_bound, rho_for_target

log = logging.getLogger(__name__)

Z_EPS = 1e-9  # columns at or below this mass are treated as absent when rounding
FEAS_TOL = 1e-7


# ------------------------------------------------------------------ types

@dataclass(frozen=True)
class ConfigColumn:
    """A set C together with a proper coloring of G[C] using colors 1..floor(gamma*k)."""

    k: int
    vertices: frozenset[int]
    witness: tuple[tuple[int, int], ...] = field(compare=False)

    @classmethod
    def make(cls, g: WeightedGraph, k: int, witness: Mapping[int, int], gamma: float = 1.0) -> "ConfigColumn":
        if not 1 <= k <= max(g.n, 1):
            raise ValueError(f"column index k={k} outside 1..n")
        if not is_proper_partial(g, witness, max_colors=width(gamma, k)):
            raise AssertionError(f"column witness is not a proper {width(gamma, k)}-coloring")
        return cls(k, frozenset(witness), tuple(sorted(witness.items())))

    @property
    def coloring(self) -> dict[int, int]:
        return dict(self.witness)

    def __lt__(self, other):
        return (self.k, sorted(self.vertices)) < (other.k, sorted(other.vertices))


def width(gamma: float, k: int) -> int:
    return int(math.floor(gamma * k + 1e-9))


@dataclass(frozen=True)
class DualPrices:
    alpha: np.ndarray  # per vertex
    beta: np.ndarray  # per color, >= 0
    theta: np.ndarray  # [v, k-1], >= 0

    def objective(self, rho: float = 1.0) -> float:
        return float(self.alpha.sum() - self.beta.sum() / rho)


@dataclass
class ConfigLpSolution:
    x: np.ndarray  # x[v, k-1]
    z: dict[ConfigColumn, float]
    cost: float
    rho: float = 1.0
    gamma: float = 1.0
    duals: DualPrices | None = None
    iterations: int = 0
    columns_generated: int = 0
    lp: LinearProgram | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def fractional_colors(self) -> np.ndarray:
        """Sum_k k*x[v,k] per vertex."""
        return self.x @ np.arange(1, self.x.shape[1] + 1)

    def columns_at(self, k: int) -> list[tuple[ConfigColumn, float]]:
        return sorted(((c, val) for c, val in self.z.items() if c.k == k), key=lambda t: t[0])


# ------------------------------------------------------------------ master LP

class _Master:
    """Restricted master: rows are added up front, z columns appended as found."""

    def __init__(self, g: WeightedGraph, rho: float):
        n = g.n
        self.g = g
        self.lp = lp = LinearProgram("min")
        self.xvar = np.zeros((n, n), dtype=int)
        for v in range(n):
            for k in range(1, n + 1):
                self.xvar[v, k - 1] = lp.add_variable(g.weights[v] * k, name=f"x_{v + 1}_{k}")
        self.assign = [lp.add_constraint({int(self.xvar[v, k]): 1.0 for k in range(n)}, "=", 1.0,
                                         name=f"assign_{v + 1}") for v in range(n)]
        self.budget = [lp.add_constraint({}, "<=", 1.0 / rho, name=f"budget_{k}") for k in range(1, n + 1)]
        self.cover = np.zeros((n, n), dtype=int)
        for v in range(n):
            for k in range(1, n + 1):
                coefs = {int(self.xvar[v, kk - 1]): -1.0 for kk in range(1, k + 1)}
                self.cover[v, k - 1] = lp.add_constraint(coefs, ">=", 0.0, name=f"cover_{v + 1}_{k}")
        self.columns: dict[int, ConfigColumn] = {}
        self.seen: set[tuple[int, frozenset]] = set()

    def column(self, col: ConfigColumn) -> Column:
        entries = {self.budget[col.k - 1]: 1.0}
        for v in col.vertices:
            entries[int(self.cover[v, col.k - 1])] = 1.0
        name = f"z_{col.k}_" + "_".join(str(v + 1) for v in sorted(col.vertices))
        return Column(0.0, entries, name=name, payload=col)

    def add_seed(self, col: ConfigColumn):
        key = (col.k, col.vertices)
        if key in self.seen:
            return
        self.seen.add(key)
        c = self.column(col)
        j = self.lp.add_variable(c.cost, c.lower, c.upper, c.name, c.entries)
        self.columns[j] = col

    def duals(self, sol) -> DualPrices:
        y = sol.duals
        n = self.g.n
        alpha = np.array([y[i] for i in self.assign], dtype=float)
        beta = np.array([-y[i] for i in self.budget], dtype=float)
        theta = y[self.cover] if n else np.zeros((0, 0))
        # sign noise from the re-solve is clipped; true duals satisfy beta, theta >= 0
        return DualPrices(alpha, np.maximum(beta, 0.0), np.maximum(theta, 0.0))


Oracle = Callable[[Sequence[float], int], MkcsResult]


def exact_pricer(g: WeightedGraph, peo: PerfectEliminationOrder,
                 rep: CliqueTreeRepresentation | None = None,
                 max_k: int = DP_MAX_K, max_n: int = DP_MAX_N) -> Oracle:
    """MkCS oracle by the clique-tree DP (exact, so rho = 1)."""
    rep = rep or build_clique_tree(g, peo)

    def oracle(weights, k):
        return exact_mkcs_dp(rep, k, weights, max_k, max_n)
    return oracle


def ptas_pricer(g: WeightedGraph, peo: PerfectEliminationOrder, eps: float,
                rep: CliqueTreeRepresentation | None = None,
                max_k: int = DP_MAX_K, max_n: int = DP_MAX_N) -> Oracle:
    rep = rep or build_clique_tree(g, peo)

    def oracle(weights, k):
        return mkcs_ptas(g, k, eps, peo, weights, max_k, max_n, rep, warn=False)
    return oracle


def seed_columns(g: WeightedGraph, peo: PerfectEliminationOrder, gamma: float = 1.0) -> list[ConfigColumn]:
    """Prefix columns of an optimal chordal coloring, heaviest class first.

    Column k holds the k heaviest classes; from k = omega on it is all of V.
    Together they form an integral feasible master solution.
    """
    col = color_subset(peo)
    classes: dict[int, list[int]] = {}
    for v, c in col.items():
        classes.setdefault(c, []).append(v)
    ranked = sorted(classes.values(), key=lambda vs: (-sum(g.weights[v] for v in vs), min(vs)))
    out = []
    for k in range(1, g.n + 1):
        witness = {v: i + 1 for i, vs in enumerate(ranked[:k]) for v in vs}
        out.append(ConfigColumn.make(g, k, witness, gamma))
    return out


def solve_config_lp(g: WeightedGraph, peo: PerfectEliminationOrder, oracle: Oracle | None = None,
                    rho: float = 1.0, gamma: float = 1.0, max_iterations: int | None = None,
                    tol: float = TOL) -> ConfigLpSolution:
    """Solve the configuration LP by column generation.

    ``oracle(weights, m)`` must return a set colorable with m colors (with a
    witness) whose weight is at least ``rho`` times the best such set. For
    each k the pricer asks for ``m = floor(gamma*k)`` with weights
    ``theta[., k]``; a set beating ``beta[k]`` is a column of negative reduced
    cost. When none is found the duals, scaled as in the feasibility argument,
    certify that the cost is at most the LP optimum.
    """
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    n = g.n
    if n == 0:
        return ConfigLpSolution(np.zeros((0, 0)), {}, 0.0, rho, gamma, DualPrices(*(np.zeros(0),) * 2, np.zeros((0, 0))))
    if oracle is None:
        oracle = exact_pricer(g, peo)
    master = _Master(g, rho)
    for col in seed_columns(g, peo, gamma):
        master.add_seed(col)
    omega = clique_number(g, peo)
    everything = {v: c for v, c in color_subset(peo).items()}

    def pricer(sol):
        d = master.duals(sol)
        scale = 1.0 + abs(sol.objective)
        new = []
        for k in range(1, n + 1):
            th = d.theta[:, k - 1]
            if th.sum() <= d.beta[k - 1] + 2 * tol * scale:
                continue
            m = width(gamma, k)
            if m >= omega:
                res_witness = everything
            else:
                res = oracle(th, m)
                res_witness = res.witness
            col = ConfigColumn.make(g, k, res_witness, gamma)
            key = (k, col.vertices)
            cand = master.column(col)
            if reduced_cost(master.lp, sol, cand) >= -2 * tol * scale:
                continue
            if key in master.seen:
                log.debug("pricer re-found column %s; ignoring", cand.name)
                continue
            master.seen.add(key)
            new.append(cand)
        return new

    res = solve_with_column_generation(master.lp, pricer, max_iterations, tol)
    for j, c in res.columns:
        master.columns[j] = c.payload
    sol = res.solution
    x = np.clip(sol.x[master.xvar], 0.0, None)
    z = {col: float(max(sol.x[j], 0.0)) for j, col in master.columns.items()}
    out = ConfigLpSolution(x, z, float(sol.objective), rho, gamma, master.duals(sol), res.iterations,
                           len(res.columns), master.lp)
    viol = config_violation(g, out)
    if max(viol.values()) > FEAS_TOL:
        raise AssertionError(f"column generation returned an infeasible point: {viol}")
    return out


def config_violation(g: WeightedGraph, sol: ConfigLpSolution) -> dict[str, float]:
    """Largest violation of each constraint family (and of nonnegativity / cost)."""
    n = g.n
    x = sol.x
    if n == 0:
        return {"assign": 0.0, "budget": 0.0, "cover": 0.0, "nonneg": 0.0, "cost": abs(sol.cost)}
    assign = float(np.abs(x.sum(axis=1) - 1).max())
    mass = np.zeros(n)
    cover = np.zeros((n, n))
    neg = float(max(0.0, -x.min()))
    for col, val in sol.z.items():
        neg = max(neg, -val)
        mass[col.k - 1] += val
        for v in col.vertices:
            cover[v, col.k - 1] += val
        if not is_proper_partial(g, col.coloring, width(sol.gamma, col.k)) or set(col.coloring) != col.vertices:
            raise AssertionError(f"column {col} carries an invalid witness")
    budget = float(max(0.0, (mass - 1 / sol.rho).max()))
    cov = float(max(0.0, (np.cumsum(x, axis=1) - cover).max()))
    cost = float(np.asarray(g.weights) @ x @ np.arange(1, n + 1))
    return {"assign": assign, "budget": budget, "cover": cov, "nonneg": neg,
            "cost": abs(cost - sol.cost) / (1 + abs(cost))}


def _check_solution(g, sol, rho, gamma):
    if sol.n != g.n:
        raise ValueError("solution does not match the graph")
    if rho != sol.rho or gamma != sol.gamma:
        raise ValueError("rho/gamma differ from those the solution was computed for")
    viol = config_violation(g, sol)
    bad = {k: v for k, v in viol.items() if v > FEAS_TOL}
    if bad:
        raise ValueError(f"malformed LP solution, violations {bad}")


# ------------------------------------------------------------------ rounding

@dataclass(frozen=True)
class GeometricSchedule:
    """Block sizes k'_j = min(n, floor(h c^j)) for offset h = c^Gamma."""

    c: float
    h: float
    n: int

    def __post_init__(self):
        if not self.c > 1:
            raise ValueError("c must exceed 1")
        if not 1 <= self.h < self.c * (1 + 1e-12):
            raise ValueError("offset h must lie in [1, c)")

    @classmethod
    def from_exponent(cls, c: float, Gamma: float, n: int) -> "GeometricSchedule":
        if not 0 <= Gamma < 1:
            raise ValueError("Gamma must lie in [0, 1)")
        return cls(c, c ** Gamma, n)

    @property
    def exponent(self) -> float:
        return math.log(self.h) / math.log(self.c)

    def k(self, j: int) -> float:
        return self.h * self.c ** j

    def kprime(self, j: int) -> int:
        # the 1e-9 keeps offsets placed exactly at m / c^j on the intended side
        return min(self.n, int(math.floor(self.k(j) + 1e-9)))

    @property
    def full_index(self) -> int:
        """First j with k'_j = n."""
        j = 0
        while self.kprime(j) < self.n:
            j += 1
        return j

    def breakpoints(self) -> list[tuple[float, int]]:
        """(k_j, k'_j) for j = 0 .. full_index."""
        return [(self.k(j), self.kprime(j)) for j in range(self.full_index + 1)]

    def color_budget(self, gamma: float = 1.0) -> int:
        return sum(width(gamma, kp) for _, kp in self.breakpoints())


def critical_offsets(c: float, n: int) -> list[float]:
    """Offsets h in [1, c) at which some floor(h c^j) changes, plus midpoints between them."""
    if n <= 0:
        return [1.0]
    top = math.ceil(math.log(n) / math.log(c)) if n > 1 else 0
    pts = {1.0}
    for j in range(top + 1):
        for m in range(1, n + 1):
            h = m / c ** j
            if 1 <= h < c:
                pts.add(h)
    crit = sorted(pts)
    merged = [crit[0]]
    for h in crit[1:]:
        if h - merged[-1] > 1e-12:
            merged.append(h)
    bounds = merged + [c]
    mids = [(a + b) / 2 for a, b in zip(bounds, bounds[1:])]
    return sorted(merged + mids)


class _Distributions:
    """Per-k column distributions with probabilities rho*z, remainder on the empty set."""

    def __init__(self, sol: ConfigLpSolution, rho: float):
        self.n = sol.n
        self.by_k: dict[int, list[tuple[ConfigColumn, float, float]]] = {}
        self.cover = np.zeros((self.n, self.n))
        for k in range(1, self.n + 1):
            items = [(col, val) for col, val in sol.columns_at(k) if val > Z_EPS]
            total = rho * sum(val for _, val in items)
            shrink = 1.0 / total if total > 1 else 1.0
            rows = [(col, rho * val * shrink, val) for col, val in items]
            self.by_k[k] = rows
            for col, p, _ in rows:
                for v in col.vertices:
                    self.cover[v, k - 1] += p
        np.clip(self.cover, 0.0, 1.0, out=self.cover)

    def empty_mass(self, k: int) -> float:
        return max(0.0, 1.0 - sum(p for _, p, _ in self.by_k[k]))

    def sample(self, k: int, u: float) -> ConfigColumn | None:
        acc = 0.0
        for col, p, _ in self.by_k[k]:
            acc += p
            if u < acc:
                return col
        return None


def _default_c(rho, gamma, c):
    if c is None:
        return optimal_c(rho, gamma).c
    if not 1 < c < c_upper_limit(rho):
        raise ValueError(f"c must lie in (1, {c_upper_limit(rho):.6g})")
    return c


def compact_colors(colors: Sequence[int]) -> list[int]:
    """Relabel the used colors 1..m preserving their order; never increases any color."""
    rank = {c: i + 1 for i, c in enumerate(sorted(set(colors)))}
    return [rank[c] for c in colors]


def msc_round(g: WeightedGraph, peo: PerfectEliminationOrder, sol: ConfigLpSolution,
              sched: GeometricSchedule | None = None, rho: float | None = None,
              gamma: float | None = None, rng: np.random.Generator | int | None = 0,
              c: float | None = None, max_blocks: int = 100_000) -> Coloring:
    """One randomized geometric rounding of ``sol``.

    Block j draws a column C for k'_j with probability rho*z (the empty set
    takes the remaining mass), colors the still-uncolored part of C with
    ``floor(gamma*k'_j)`` fresh colors in a random class order, and moves on.
    When no schedule is given the offset exponent is drawn uniformly.
    """
    rho = sol.rho if rho is None else rho
    gamma = sol.gamma if gamma is None else gamma
    _check_solution(g, sol, rho, gamma)
    rng = np.random.default_rng(rng)
    if g.n == 0:
        return Coloring.of(g, [], method="msc-round", blocks=0)
    if sched is None:
        sched = GeometricSchedule.from_exponent(_default_c(rho, gamma, c), float(rng.random()), g.n)
    elif sched.n != g.n:
        raise ValueError("schedule built for a different n")
    dist = _Distributions(sol, rho)
    colors = [0] * g.n
    uncolored = set(range(g.n))
    offset = 0
    j = 0
    while uncolored:
        if j >= max_blocks:
            raise RuntimeError(f"rounding did not finish within {max_blocks} blocks")
        kp = sched.kprime(j)
        W = width(gamma, kp)
        col = dist.sample(kp, float(rng.random()))
        perm = rng.permutation(W) + 1
        if col is not None:
            for v, cls in col.witness:
                if v in uncolored:
                    colors[v] = offset + int(perm[cls - 1])
                    uncolored.discard(v)
        offset += W
        j += 1
    return Coloring.of(g, colors, method="msc-round", h=sched.h, c=sched.c, blocks=j, color_budget=offset)


def _block_plan(sched: GeometricSchedule, gamma: float):
    plan = []
    offset = 0
    for _, kp in sched.breakpoints():
        W = width(gamma, kp)
        plan.append((kp, W, offset))
        offset += W
    return plan


def _expected_future(plan, dist: _Distributions):
    """E[color of v | v uncolored before block i] under the randomized rounding, for every block i.

    Past the last planned block the width stays floor(gamma*n) and the
    coverage probability stays q, giving a geometric tail.
    """
    kp, W, off = plan[-1]
    q = np.maximum(dist.cover[:, kp - 1], 1e-15)
    tail = off + (W + 1) / 2 + W * (1 - q) / q
    out = [None] * len(plan)
    out[-1] = tail
    for i in range(len(plan) - 2, -1, -1):
        kp, W, off = plan[i]
        qi = dist.cover[:, kp - 1]
        out[i] = qi * (off + (W + 1) / 2) + (1 - qi) * out[i + 1]
    return out


def _derandomize_offset(g, sched, dist, gamma, everything, max_blocks=100_000):
    """Conditional-expectation choice of one column per block for a fixed offset."""
    w = np.asarray(g.weights, dtype=float)
    plan = _block_plan(sched, gamma)
    future = _expected_future(plan, dist)
    n = g.n
    colors = [0] * n
    uncolored = np.ones(n, dtype=bool)
    i = 0
    J = len(plan) - 1
    while uncolored.any():
        if i >= max_blocks:
            raise RuntimeError("derandomized rounding did not finish")
        if i <= J:
            kp, W, off = plan[i]
            nxt = future[i + 1] if i < J else future[J] + W
        else:
            kp, W, _ = plan[J]
            off = plan[J][2] + (i - J) * W
            nxt = future[J] + (i + 1 - J) * W
        cands: list[tuple[ConfigColumn | None, float]] = [(col, z) for col, _, z in dist.by_k[kp]]
        if dist.empty_mass(kp) > Z_EPS:
            cands.append((None, 0.0))
        if kp == n:
            cands.append((everything, 0.0))
            # at full width only candidates that make progress are allowed
            cands = [(col, z) for col, z in cands
                     if col is not None and any(uncolored[v] for v in col.vertices)]
        best = None
        for col, z in cands:
            new_colors, block_cost, covered = _greedy_block(col, uncolored, w, off)
            rest = uncolored.copy()
            rest[covered] = False
            score = block_cost + float(w[rest] @ nxt[rest])
            key = (score, -z, sorted(col.vertices) if col is not None else [])
            if best is None or _better(key, best[0]):
                best = (key, new_colors, covered)
        _, new_colors, covered = best
        for v, cval in new_colors.items():
            colors[v] = cval
        uncolored[covered] = False
        i += 1
    return colors, i


def _better(a, b):
    scale = 1e-12 * (1 + abs(b[0]))
    if a[0] < b[0] - scale:
        return True
    if a[0] > b[0] + scale:
        return False
    return a[1:] < b[1:]


def _greedy_block(col, uncolored, w, offset):
    """Color the uncolored part of ``col``: its classes in non-increasing weight order."""
    if col is None:
        return {}, 0.0, []
    classes: dict[int, list[int]] = {}
    for v, cls in col.witness:
        if uncolored[v]:
            classes.setdefault(cls, []).append(v)
    ranked = sorted(classes.items(), key=lambda t: (-sum(w[v] for v in t[1]), t[0]))
    out = {}
    cost = 0.0
    for pos, (_, vs) in enumerate(ranked, start=1):
        for v in vs:
            out[v] = offset + pos
            cost += w[v] * (offset + pos)
    return out, cost, list(out)


def msc_round_derandomized(g: WeightedGraph, peo: PerfectEliminationOrder, sol: ConfigLpSolution,
                           c: float | None = None, rho: float | None = None,
                           gamma: float | None = None) -> Coloring:
    """Deterministic rounding: every critical offset, conditional expectations per block.

    For a fixed offset each block takes the candidate column minimizing the
    realized cost of the block (classes in non-increasing weight order) plus
    the expected cost of the randomized rounding on the vertices left over.
    That never exceeds the expectation for this offset. The best offset then
    never exceeds the average over offsets. Unused colors are squeezed out at
    the end. Ties go to the smaller offset, then larger z, then the
    lexicographically smaller column.
    """
    rho = sol.rho if rho is None else rho
    gamma = sol.gamma if gamma is None else gamma
    _check_solution(g, sol, rho, gamma)
    c = _default_c(rho, gamma, c)
    if g.n == 0:
        return Coloring.of(g, [], method="msc-derandomized", c=c)
    dist = _Distributions(sol, rho)
    everything = ConfigColumn.make(g, g.n, color_subset(peo), gamma)
    best = None
    for h in critical_offsets(c, g.n):
        sched = GeometricSchedule(c, h, g.n)
        colors, blocks = _derandomize_offset(g, sched, dist, gamma, everything)
        colors = compact_colors(colors)
        obj = float(np.dot(g.weights, colors))
        if best is None or obj < best[0] - 1e-9 * (1 + abs(obj)):
            best = (obj, colors, h, blocks)
    obj, colors, h, blocks = best
    return Coloring.of(g, colors, method="msc-derandomized", c=c, h=h, blocks=blocks, lp_cost=sol.cost)


# ------------------------------------------------------------------ pipeline

def msc_approx(g: WeightedGraph, eps: float = 0.1, c: float | None = None,
               peo: PerfectEliminationOrder | None = None, max_k: int = DP_MAX_K,
               max_n: int = DP_MAX_N) -> Coloring:
    """Weighted sum coloring of a chordal graph within (mu*/2 + eps) of optimal.

    When the clique-tree DP can price every color count exactly, the LP is
    solved exactly (rho = 1). Otherwise the PTAS is the pricing oracle with a
    loss eps' small enough that the rounding ratio stays within
    ``mu*/2 + eps``; if the PTAS has to fall back to LP rounding that
    guarantee is no longer backed by the exact DP.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if peo is None:
        peo = recognize_chordal(g)
    if g.n == 0:
        return Coloring.of(g, [], method="msc-lp", lp_cost=0.0, iterations=0, columns_generated=0,
                           lp_solution=solve_config_lp(g, peo))
    omega = clique_number(g, peo)
    rep = build_clique_tree(g, peo)
    if omega - 1 <= max_k and g.n <= max_n:
        rho, oracle, pricing = 1.0, exact_pricer(g, peo, rep, max_k, max_n), "exact-dp"
    else:
        e = rho_for_target(eps, c)
        rho, oracle, pricing = 1.0 - e, ptas_pricer(g, peo, e, rep, max_k, max_n), "ptas"
        log.warning("clique number %d (n=%d) exceeds the exact DP caps k <= %d, n <= %d; pricing "
                    "falls back to LP rounding where the DP is refused", omega, g.n, max_k, max_n)
    c = _default_c(rho, 1.0, c)
    sol = solve_config_lp(g, peo, oracle, rho, 1.0)
    col = msc_round_derandomized(g, peo, sol, c, rho, 1.0)
    info = dict(col.info)
    info.update(method="msc-lp", rho=rho, pricing=pricing, lp_cost=sol.cost,
                iterations=sol.iterations, columns_generated=sol.columns_generated,
                ratio_bound=ratio_bound(rho, 1.0, c))
    info["lp_solution"] = sol
    return Coloring.of(g, col.colors, **info)


# ------------------------------------------------------------------ baselines

def _extract_maximal(g, peo, pool: set[int]) -> set[int]:
    """Max-weight independent set of G[pool], padded to a maximal one with zero-weight vertices."""
    chosen = max_weight_independent_set(g, peo, vertices=pool)
    for v in peo.order:
        if v in pool and v not in chosen and not (g.adj[v] & chosen):
            chosen.add(v)
    return chosen


def greedy_msc_4approx(g: WeightedGraph, peo: PerfectEliminationOrder) -> Coloring:
    """Color t goes to a max-weight independent set of the vertices still uncolored."""
    colors = [0] * g.n
    left = set(range(g.n))
    t = 0
    while left:
        t += 1
        ind = _extract_maximal(g, peo, left)
        for v in ind:
            colors[v] = t
        left -= ind
    return Coloring.of(g, colors, method="greedy4")


def coverage_concat_msc(g: WeightedGraph, peo: PerfectEliminationOrder, c: float | None = None) -> Coloring:
    """Comparison baseline: greedy max-coverage blocks of k'_j colors over the geometric schedule.

    Block j extracts up to k'_j successive max-weight independent sets among
    uncolored vertices. All critical offsets are tried and the best compacted
    result is kept.
    """
    c = optimal_c(1.0, 1.0).c if c is None else c
    if not 1 < c:
        raise ValueError("c must exceed 1")
    if g.n == 0:
        return Coloring.of(g, [], method="coverage-concat", c=c)
    best = None
    for h in critical_offsets(c, g.n):
        sched = GeometricSchedule(c, h, g.n)
        colors = [0] * g.n
        left = set(range(g.n))
        offset, j = 0, 0
        while left:
            kp = sched.kprime(j)
            for t in range(1, kp + 1):
                if not left:
                    break
                ind = _extract_maximal(g, peo, left)
                for v in ind:
                    colors[v] = offset + t
                left -= ind
            offset += kp
            j += 1
        colors = compact_colors(colors)
        obj = float(np.dot(g.weights, colors))
        if best is None or obj < best[0] - 1e-9 * (1 + abs(obj)):
            best = (obj, colors, h)
    return Coloring.of(g, best[1], method="coverage-concat", c=c, h=best[2])
