"""Seeded random chordal instances: k-trees, interval graphs, subtree-intersection graphs.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
:class:`GenSpec` fully determines its graph.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .graph import WeightedGraph

PRNG = "numpy.random.PCG64"
FAMILIES = ("ktree", "interval", "subtree")
WEIGHT_MODES = ("unit", "uniform", "exponential")


@dataclass(frozen=True)
class GenSpec:
    """Instance recipe.

    ``param`` is the tree width for ``ktree``, the length scale (density) for
    ``interval`` and the host-tree size for ``subtree``. ``max_weight`` bounds
    the ``uniform`` and ``exponential`` weight modes.
    """

    family: str
    n: int
    param: float = 2
    weights: str = "unit"
    max_weight: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.weights not in WEIGHT_MODES:
            raise ValueError(f"weights must be one of {WEIGHT_MODES}")
        if self.max_weight < 1:
            raise ValueError("max_weight must be >= 1")
        if self.family == "ktree" and (self.param < 1 or int(self.param) != self.param):
            raise ValueError("ktree width must be a positive integer")
        if self.family == "interval" and not 0 < self.param <= 10:
            raise ValueError("interval density must lie in (0, 10]")
        if self.family == "subtree" and (self.param < 1 or int(self.param) != self.param):
            raise ValueError("subtree host size must be a positive integer")

    @property
    def name(self) -> str:
        return f"{self.family}-n{self.n}-p{self.param:g}-{self.weights}{self.max_weight}-s{self.seed}"

    def to_json(self) -> dict:
        return {**asdict(self), "prng": PRNG}

    @classmethod
    def from_json(cls, d: dict) -> "GenSpec":
        d = {k: v for k, v in d.items() if k != "prng"}
        return cls(**d)

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        """Parse ``family:n=..,param=..,weights=..,max_weight=..,seed=..``."""
        family, _, rest = text.partition(":")
        kwargs: dict = {}
        for item in filter(None, rest.split(",")):
            key, _, val = item.partition("=")
            key = key.strip()
            if key in ("n", "max_weight", "seed"):
                kwargs[key] = int(val)
            elif key == "param":
                kwargs[key] = float(val)
            elif key == "weights":
                kwargs[key] = val.strip()
            else:
                raise ValueError(f"unknown spec field {key!r}")
        return cls(family.strip(), **kwargs)


@dataclass
class Generated:
    graph: WeightedGraph
    spec: GenSpec
    intervals: list[tuple[float, float]] | None = None
    meta: dict = field(default_factory=dict)


def generate(spec: GenSpec) -> WeightedGraph:
    return generate_full(spec).graph


def generate_full(spec: GenSpec) -> Generated:
    rng = np.random.default_rng(spec.seed)
    intervals = None
    if spec.family == "ktree":
        edges = _ktree_edges(spec.n, int(spec.param), rng)
    elif spec.family == "interval":
        intervals, edges = _interval_edges(spec.n, spec.param, rng)
    else:
        edges = _subtree_edges(spec.n, int(spec.param), rng)
    weights = _weights(spec, rng)
    g = WeightedGraph.from_edges(spec.n, edges, weights)
    return Generated(g, spec, intervals, {"prng": PRNG, "spec": spec.to_json()})


def _ktree_edges(n, k, rng):
    """Random k-tree: grow from K_{k+1} by attaching vertices to random k-cliques."""
    base = min(n, k + 1)
    edges = set(combinations(range(base), 2))
    cliques = [tuple(c) for c in combinations(range(base), k)] if n > k else []
    for v in range(base, n):
        q = cliques[rng.integers(len(cliques))]
        for u in q:
            edges.add((u, v))
        for i in range(k):
            cliques.append(q[:i] + q[i + 1:] + (v,))
    perm = rng.permutation(n)
    return [(int(perm[u]), int(perm[v])) for u, v in edges]


def _interval_edges(n, density, rng):
    left = rng.random(n)
    length = density * rng.random(n) * (1.0 / max(1, n) ** 0.5)
    intervals = [(float(a), float(a + l)) for a, l in zip(left, length)]
    edges = [(u, v) for u, v in combinations(range(n), 2)
             if intervals_overlap(intervals[u], intervals[v])]
    return intervals, edges


def intervals_overlap(a, b) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


def _subtree_edges(n, host, rng):
    """Intersection graph of random connected subtrees of a random host tree."""
    parent = [-1] + [int(rng.integers(i)) for i in range(1, host)]
    nbrs = [[] for _ in range(host)]
    for i in range(1, host):
        nbrs[i].append(parent[i])
        nbrs[parent[i]].append(i)
    subtrees = []
    for _ in range(n):
        size = int(rng.integers(1, max(2, host // 2) + 1))
        start = int(rng.integers(host))
        nodes = {start}
        frontier = list(nbrs[start])
        while len(nodes) < size and frontier:
            x = frontier.pop(int(rng.integers(len(frontier))))
            if x in nodes:
                continue
            nodes.add(x)
            frontier.extend(y for y in nbrs[x] if y not in nodes)
        subtrees.append(nodes)
    return [(u, v) for u, v in combinations(range(n), 2) if subtrees[u] & subtrees[v]]


def _weights(spec, rng):
    if spec.weights == "unit":
        return [1.0] * spec.n
    if spec.weights == "uniform":
        return [float(x) for x in rng.integers(1, spec.max_weight + 1, size=spec.n)]
    raw = rng.geometric(0.35, size=spec.n)
    return [float(min(int(x), spec.max_weight)) for x in raw]


def sidecar_json(gen: Generated) -> str:
    data = dict(gen.meta)
    if gen.intervals is not None:
        data["intervals"] = gen.intervals
    return json.dumps(data, indent=2, sort_keys=True)
