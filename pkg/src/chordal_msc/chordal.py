"""Chordality: Lex-BFS, perfect elimination orderings and the classic linear-ish
subroutines that ride on them (optimal coloring, max-weight independent set).

Orderings follow the left-neighbour convention: in ``v_1, ..., v_n`` the
neighbours of ``v_i`` that come *before* it form a clique. A Lex-BFS visit
order of a chordal graph has exactly this property.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Coloring, WeightedGraph


class NotChordalError(ValueError):
    """Graph is not chordal; ``cycle`` is an induced cycle of length >= 4."""

    def __init__(self, cycle: Sequence[int]):
        self.cycle = list(cycle)
        super().__init__(f"graph is not chordal; induced cycle {self.cycle}")


class NotAPeoError(ValueError):
    pass


@dataclass(frozen=True)
class PerfectEliminationOrder:
    order: tuple[int, ...]
    position: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]  # left[v]: earlier neighbours of v, by position

    @classmethod
    def from_order(cls, g: WeightedGraph, order: Sequence[int]) -> "PerfectEliminationOrder":
        if not verify_peo(g, order):
            raise NotAPeoError("ordering is not a perfect elimination ordering")
        return cls._unchecked(g, order)

    @classmethod
    def _unchecked(cls, g: WeightedGraph, order: Sequence[int]) -> "PerfectEliminationOrder":
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
        left = tuple(tuple(sorted((u for u in g.adj[v] if pos[u] < pos[v]), key=pos.__getitem__))
                     for v in range(g.n))
        return cls(tuple(order), tuple(pos), left)

    def __len__(self):
        return len(self.order)

    def restricted(self, vertices: Iterable[int]) -> list[int]:
        """The ordering restricted to ``vertices``; a PEO of the induced subgraph."""
        keep = set(vertices)
        return [v for v in self.order if v in keep]


class _Cell:
    __slots__ = ("members", "prev", "next", "split")

    def __init__(self, members):
        self.members = members
        self.prev = None
        self.next = None
        self.split = None


def lex_bfs(g: WeightedGraph) -> list[int]:
    """Lexicographic BFS visit order by partition refinement.

    Among vertices with equal labels the lowest id is taken, so the result is
    deterministic. For chordal graphs the visit order is a perfect
    elimination ordering (left-neighbour convention).
    """
    if g.n == 0:
        return []
    head = _Cell(set(range(g.n)))
    cell_of = [head] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        v = min(head.members)
        head.members.discard(v)
        visited[v] = True
        order.append(v)
        if not head.members:
            head = _unlink(head, head)
        touched = []
        for u in g.adj[v]:
            if visited[u]:
                continue
            cell = cell_of[u]
            if cell.split is None:
                new = _Cell(set())
                new.prev, new.next = cell.prev, cell
                if cell.prev is not None:
                    cell.prev.next = new
                else:
                    head = new
                cell.prev = new
                cell.split = new
                touched.append(cell)
            cell.members.discard(u)
            cell.split.members.add(u)
            cell_of[u] = cell.split
        for cell in touched:
            cell.split = None
            if not cell.members:
                head = _unlink(cell, head)
    return order


def _unlink(cell, head):
    if cell.prev is not None:
        cell.prev.next = cell.next
    if cell.next is not None:
        cell.next.prev = cell.prev
    return cell.next if cell is head else head


def verify_peo(g: WeightedGraph, order: Sequence[int]) -> bool:
    """True iff every left neighbourhood under ``order`` is a clique.

    Uses the parent check: with ``p`` the latest left neighbour of ``v``, all
    other left neighbours of ``v`` must be left neighbours of ``p``.
    """
    if len(order) != g.n or sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    return _first_failure(g, order) is None


def _first_failure(g, order):
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        left = [u for u in g.adj[v] if pos[u] < pos[v]]
        if not left:
            continue
        p = max(left, key=pos.__getitem__)
        for u in left:
            if u != p and u not in g.adj[p]:
                return v, u, p
    return None


def recognize_chordal(g: WeightedGraph) -> PerfectEliminationOrder:
    """Return a PEO of ``g`` or raise :class:`NotChordalError` with an induced cycle."""
    order = lex_bfs(g)
    failure = _first_failure(g, order)
    if failure is None:
        return PerfectEliminationOrder._unchecked(g, order)
    raise NotChordalError(_induced_cycle(g, *failure))


def is_chordal(g: WeightedGraph) -> bool:
    return _first_failure(g, lex_bfs(g)) is None


def _induced_cycle(g, v, u, p):
    cycle = _cycle_through(g, v, u, p)
    if cycle is not None:
        return cycle
    # Exhaustive fallback: any induced cycle passes through some vertex whose two
    # cycle neighbours are non-adjacent and joined outside its closed neighbourhood.
    for v in range(g.n):
        nbrs = sorted(g.adj[v])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if b not in g.adj[a]:
                    cycle = _cycle_through(g, v, a, b)
                    if cycle is not None:
                        return cycle
    raise AssertionError("chordality check failed but no induced cycle exists")


def _cycle_through(g, v, a, b):
    """Shortest a-b path avoiding N[v] (except a, b), closed through v."""
    blocked = set(g.adj[v]) | {v}
    blocked -= {a, b}
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in sorted(g.adj[x]):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    if b not in prev:
        return None
    path = []
    x = b
    while x is not None:
        path.append(x)
        x = prev[x]
    return [v] + path[::-1]


def color_subset(peo: PerfectEliminationOrder, vertices: Iterable[int] | None = None) -> dict[int, int]:
    """First-fit coloring along the PEO, restricted to ``vertices``.

    On a chordal graph this uses exactly the clique number of the induced
    subgraph; colors are 1-based.
    """
    keep = None if vertices is None else set(vertices)
    col: dict[int, int] = {}
    for v in peo.order:
        if keep is not None and v not in keep:
            continue
        used = {col[u] for u in peo.left[v] if u in col}
        c = 1
        while c in used:
            c += 1
        col[v] = c
    return col


def greedy_color(g: WeightedGraph, peo: PerfectEliminationOrder) -> Coloring:
    col = color_subset(peo)
    return Coloring.of(g, col, method="peo-greedy")


def clique_number(g: WeightedGraph, peo: PerfectEliminationOrder) -> int:
    return max((len(l) + 1 for l in peo.left), default=0)


def max_weight_independent_set(g: WeightedGraph, peo: PerfectEliminationOrder,
                               weights: Sequence[float] | None = None,
                               vertices: Iterable[int] | None = None) -> set[int]:
    """Maximum-weight independent set of a chordal graph (Frank's algorithm).

    ``weights`` overrides the graph weights; ``vertices`` restricts the search
    to an induced subgraph. Vertices of zero weight are never chosen.
    """
    w = g.weights if weights is None else weights
    keep = set(range(g.n)) if vertices is None else set(vertices)
    scale = max((abs(w[v]) for v in keep), default=0.0)
    tol = 1e-12 * scale
    residual = {v: float(w[v]) for v in keep}
    red = []
    for v in reversed(peo.order):
        if v not in keep or residual[v] <= tol:
            continue
        red.append(v)
        r = residual[v]
        for u in peo.left[v]:
            if u in keep:
                residual[u] -= r
    chosen: set[int] = set()
    for v in reversed(red):
        if not (g.adj[v] & chosen):
            chosen.add(v)
    return chosen
