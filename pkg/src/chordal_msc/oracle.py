"""Exhaustive reference solvers for small graphs.

Nothing here relies on chordality, so these routines independently check the
chordal fast paths (and work on arbitrary graphs such as odd cycles).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graph import Coloring, WeightedGraph
from .mkcs import MkcsResult, make_result


class OracleBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_mkcs_vertices: int = 12
    max_msc_vertices: int = 10
    time_cap: float | None = 60.0

    def __post_init__(self):
        if self.max_mkcs_vertices < 1 or self.max_msc_vertices < 1:
            raise ValueError("budgets must be positive")
        if self.time_cap is not None and self.time_cap <= 0:
            raise ValueError("time cap must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, cap):
        self.deadline = None if cap is None else time.monotonic() + cap

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise OracleBudgetError("oracle time cap exceeded")


def _greedy_clique(g: WeightedGraph, vertices) -> list[int]:
    verts = sorted(vertices, key=lambda v: (-len(g.adj[v]), v))
    clique: list[int] = []
    for v in verts:
        if all(u in g.adj[v] for u in clique):
            clique.append(v)
    return clique


def k_coloring(g: WeightedGraph, k: int, vertices=None, clock: _Clock | None = None) -> dict[int, int] | None:
    """A proper coloring of G[vertices] with colors 1..k, or None if none exists."""
    verts = list(range(g.n)) if vertices is None else sorted(vertices)
    if not verts:
        return {}
    if k < 1:
        return None
    vs = set(verts)
    clique = _greedy_clique(g, verts)
    if len(clique) > k:
        return None
    col = {v: i + 1 for i, v in enumerate(clique)}
    rest = [v for v in sorted(verts, key=lambda v: (-len(g.adj[v] & vs), v)) if v not in col]

    def extend(i, used):
        if clock is not None and i % 8 == 0:
            clock.check()
        if i == len(rest):
            return True
        v = rest[i]
        banned = {col[u] for u in g.adj[v] if u in col}
        for c in range(1, min(k, used + 1) + 1):
            if c in banned:
                continue
            col[v] = c
            if extend(i + 1, max(used, c)):
                return True
            del col[v]
        return False

    return dict(col) if extend(0, len(clique)) else None


def is_k_colorable(g: WeightedGraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    if g.n > budget.max_mkcs_vertices:
        raise OracleBudgetError(f"n={g.n} exceeds oracle budget {budget.max_mkcs_vertices}")
    return k_coloring(g, k, clock=_Clock(budget.time_cap)) is not None


def brute_mkcs(g: WeightedGraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> MkcsResult:
    """Maximum-weight S with G[S] k-colorable, by trying subsets heaviest first.

    Ties prefer larger sets, then the smaller bitmask, so zero-weight vertices are kept when possible.
    """
    if g.n > budget.max_mkcs_vertices:
        raise OracleBudgetError(f"n={g.n} exceeds oracle budget {budget.max_mkcs_vertices}")
    if k < 1:
        raise ValueError("k must be a positive integer")
    clock = _Clock(budget.time_cap)
    subsets = []
    for mask in range(1 << g.n):
        members = [v for v in range(g.n) if mask >> v & 1]
        subsets.append((-sum(g.weights[v] for v in members), -len(members), mask, members))
    subsets.sort(key=lambda t: t[:3])
    for *_, members in subsets:
        col = k_coloring(g, k, members, clock)
        if col is not None:
            return make_result(g, members, col, k, "brute-force")
    raise AssertionError("the empty set is always k-colorable")


def brute_msc(g: WeightedGraph, budget: OracleBudget = DEFAULT_BUDGET) -> Coloring:
    """Exact minimum weighted sum coloring by branch and bound.

    Vertices are branched in decreasing degree order; vertex v only tries
    colors up to deg(v) + 1, which loses no optimum. The bound adds, for each
    uncolored vertex, its weight times the smallest color its colored
    neighbours leave free (at least 1).
    """
    if g.n > budget.max_msc_vertices:
        raise OracleBudgetError(f"n={g.n} exceeds oracle budget {budget.max_msc_vertices}")
    clock = _Clock(budget.time_cap)
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    w = g.weights

    # first-fit in branching order as the initial incumbent
    first = {}
    for v in order:
        used = {first[u] for u in g.adj[v] if u in first}
        c = 1
        while c in used:
            c += 1
        first[v] = c
    best = [sum(w[v] * first[v] for v in range(g.n)), dict(first)]
    col: dict[int, int] = {}
    calls = [0]

    def bound(i, partial):
        total = partial
        for v in order[i:]:
            used = {col[u] for u in g.adj[v] if u in col}
            c = 1
            while c in used:
                c += 1
            total += w[v] * c
        return total

    def branch(i, partial):
        calls[0] += 1
        if calls[0] % 256 == 0:
            clock.check()
        if i == len(order):
            if partial < best[0]:
                best[0], best[1] = partial, dict(col)
            return
        if bound(i, partial) >= best[0]:
            return
        v = order[i]
        used = {col[u] for u in g.adj[v] if u in col}
        for c in range(1, len(g.adj[v]) + 2):
            if c in used:
                continue
            if partial + w[v] * c >= best[0] and w[v] > 0:
                break
            col[v] = c
            branch(i + 1, partial + w[v] * c)
            del col[v]

    branch(0, 0.0)
    return Coloring.of(g, best[1], method="brute-force")
