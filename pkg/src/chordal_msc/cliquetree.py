"""Clique-tree (subtree) representation of a chordal graph with max degree 3."""

from __future__ import annotations

from dataclasses import dataclass

from .chordal import NotAPeoError, PerfectEliminationOrder, verify_peo
from .graph import WeightedGraph


@dataclass(frozen=True)
class CliqueTreeRepresentation:
    """Tree ``T`` plus one connected subtree ``T_v`` per graph vertex.

    ``bags[a]`` lists the graph vertices whose subtree contains tree node ``a``;
    ``subtrees[v]`` is the node set of ``T_v``. Dummy nodes (joining components)
    have empty bags.
    """

    graph: WeightedGraph
    peo: PerfectEliminationOrder
    tree_adj: tuple[tuple[int, ...], ...]
    bags: tuple[frozenset[int], ...]
    subtrees: tuple[frozenset[int], ...]

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, nbrs in enumerate(self.tree_adj) for b in nbrs if a < b]

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.tree_adj), default=0)

    def max_bag(self) -> int:
        return max((len(b) for b in self.bags), default=0)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def maximal_cliques(g: WeightedGraph, peo: PerfectEliminationOrder) -> list[frozenset[int]]:
    """Maximal cliques of a chordal graph, one per PEO vertex whose closed left
    neighbourhood is not swallowed by a later vertex."""
    closed = {v: frozenset(peo.left[v]) | {v} for v in range(g.n)}
    swallowed = set()
    for u in range(g.n):
        if peo.left[u]:
            p = peo.left[u][-1]
            if len(peo.left[u]) == len(peo.left[p]) + 1:
                swallowed.add(p)
    return [closed[v] for v in peo.order if v not in swallowed]


def build_clique_tree(g: WeightedGraph, peo: PerfectEliminationOrder) -> CliqueTreeRepresentation:
    """Clique tree from a PEO, components joined by dummy nodes, degrees split to <= 3.

    The tree over maximal cliques is a maximum-weight spanning forest of the
    clique intersection graph (weights ``|K_i & K_j|``), which is a clique tree
    for chordal graphs.
    """
    if len(peo.order) != g.n or not verify_peo(g, peo.order):
        raise NotAPeoError("build_clique_tree needs a valid PEO for the graph")

    cliques = maximal_cliques(g, peo)
    containing: dict[int, list[int]] = {}
    for i, cl in enumerate(cliques):
        for v in cl:
            containing.setdefault(v, []).append(i)
    overlaps: dict[tuple[int, int], int] = {}
    for ids in containing.values():
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                key = (ids[x], ids[y])
                overlaps[key] = overlaps.get(key, 0) + 1
    uf = _UnionFind(len(cliques))
    bags: list[frozenset[int]] = list(cliques)
    adj: list[list[int]] = [[] for _ in cliques]
    for (a, b), wt in sorted(overlaps.items(), key=lambda kv: (-kv[1], kv[0])):
        if uf.union(a, b):
            adj[a].append(b)
            adj[b].append(a)

    roots = sorted({uf.find(i) for i in range(len(cliques))})
    if not roots:
        bags.append(frozenset())
        adj.append([])
    for r1, r2 in zip(roots, roots[1:]):
        d = len(bags)
        bags.append(frozenset())
        adj.append([r1, r2])
        adj[r1].append(d)
        adj[r2].append(d)

    bags, adj = _split_high_degree(bags, adj)
    subtrees: list[set[int]] = [set() for _ in range(g.n)]
    for a, bag in enumerate(bags):
        for v in bag:
            subtrees[v].add(a)
    return CliqueTreeRepresentation(
        graph=g,
        peo=peo,
        tree_adj=tuple(tuple(sorted(nb)) for nb in adj),
        bags=tuple(bags),
        subtrees=tuple(frozenset(s) for s in subtrees),
    )


def _split_high_degree(bags, adj):
    """Replace every node of degree d > 3 by a path of copies carrying the same bag."""
    bags = list(bags)
    adj = [list(nb) for nb in adj]
    for a in range(len(adj)):
        if len(adj[a]) <= 3:
            continue
        nbrs = adj[a]
        # a keeps nbrs[0], nbrs[1]; each further copy takes one neighbour, the last takes two
        chain = [a]
        adj[a] = nbrs[:2]
        rest = nbrs[2:]
        while rest:
            take = rest[:2] if len(rest) == 2 else rest[:1]
            rest = rest[len(take):]
            c = len(bags)
            bags.append(bags[a])
            adj.append(list(take))
            for b in take:
                adj[b] = [c if x == a else x for x in adj[b]]
            prev = chain[-1]
            adj[prev].append(c)
            adj[c].append(prev)
            chain.append(c)
    return bags, adj
