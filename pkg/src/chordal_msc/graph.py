"""Weighted graphs, colorings and the plain-text graph file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed. Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ColoringError(AssertionError):
    """A coloring violated properness or its objective bookkeeping."""


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph on vertices ``0..n-1`` with nonnegative vertex weights.

    Use :meth:`from_edges` to build one; the constructor expects already
    symmetric adjacency sets.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n or len(self.weights) != self.n:
            raise ValueError("adjacency and weights must have one entry per vertex")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"edge {v}-{u} leaves the vertex range")
                if v not in self.adj[u]:
                    raise ValueError(f"adjacency not symmetric for {v}-{u}")
        for v, w in enumerate(self.weights):
            if not w >= 0:
                raise ValueError(f"weight of vertex {v} must be >= 0, got {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   weights: Sequence[float] | None = None) -> "WeightedGraph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} leaves the vertex range 0..{n - 1}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        if weights is None:
            weights = [1.0] * n
        return cls(n, tuple(frozenset(s) for s in nbrs), tuple(float(w) for w in weights))

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def total_weight(self) -> float:
        return float(sum(self.weights))

    def weight_of(self, vertices: Iterable[int]) -> float:
        return float(sum(self.weights[v] for v in vertices))

    def with_weights(self, weights: Sequence[float]) -> "WeightedGraph":
        return WeightedGraph(self.n, self.adj, tuple(float(w) for w in weights))

    def induced(self, vertices: Iterable[int]) -> tuple["WeightedGraph", list[int]]:
        """Induced subgraph, relabelled to ``0..|S|-1``; also returns the new->old map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u in keep for v in self.adj[u]
                 if v in index and u < v]
        sub = WeightedGraph.from_edges(len(keep), edges, [self.weights[v] for v in keep])
        return sub, keep

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adj[v] & vs) for v in vs)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self.adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))


@dataclass(frozen=True)
class Coloring:
    """Proper coloring with positive integer colors, one entry per vertex.

    ``colors[v]`` is the color of vertex ``v``. Instances are only built through
    :meth:`of`, which checks properness against the graph and computes the
    weighted objective, so every coloring in circulation has been verified.
    """

    colors: tuple[int, ...]
    objective: float
    info: dict = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, g: WeightedGraph, colors: Sequence[int] | Mapping[int, int],
           **info) -> "Coloring":
        if isinstance(colors, Mapping):
            colors = [colors[v] for v in range(g.n)]
        colors = tuple(int(c) for c in colors)
        check_proper(g, colors)
        objective = float(sum(w * c for w, c in zip(g.weights, colors)))
        return cls(colors, objective, dict(info))

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    @property
    def max_color(self) -> int:
        return max(self.colors, default=0)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return out

    def recompute_objective(self, g: WeightedGraph) -> float:
        return float(sum(w * c for w, c in zip(g.weights, self.colors)))


PROPER_CHECKS = {"count": 0}


def check_proper(g: WeightedGraph, colors: Sequence[int]) -> None:
    """Raise :class:`ColoringError` unless ``colors`` is a proper positive coloring of ``g``."""
    PROPER_CHECKS["count"] += 1
    if len(colors) != g.n:
        raise ColoringError(f"coloring has {len(colors)} entries for {g.n} vertices")
    for v, c in enumerate(colors):
        if c < 1:
            raise ColoringError(f"vertex {v} has non-positive color {c}")
        for u in g.adj[v]:
            if colors[u] == c:
                raise ColoringError(f"edge {u}-{v} is monochromatic (color {c})")


def is_proper_partial(g: WeightedGraph, colors: Mapping[int, int], max_colors: int | None = None) -> bool:
    """Properness of a coloring defined on a subset of the vertices."""
    for v, c in colors.items():
        if c < 1 or (max_colors is not None and c > max_colors):
            return False
        for u in g.adj[v]:
            if colors.get(u) == c:
                return False
    return True


# ---------------------------------------------------------------- file format

def parse_graph(text: str) -> WeightedGraph:
    """Parse the ``p``/``w``/``e`` text format (1-indexed vertices, ``c`` comments)."""
    n = None
    declared_m = None
    weights: dict[int, float] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate 'p' line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("expected 'p <n> <m>'", lineno)
            n, declared_m = _int(parts[1], lineno), _int(parts[2], lineno)
            if n < 0 or declared_m < 0:
                raise GraphFormatError("negative size in 'p' line", lineno)
            continue
        if n is None:
            raise GraphFormatError(f"'{tag}' line before the 'p' line", lineno)
        if tag == "w":
            if len(parts) != 3:
                raise GraphFormatError("expected 'w <vertex> <weight>'", lineno)
            v = _vertex(parts[1], n, lineno)
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad weight {parts[2]!r}", lineno) from None
            if not w >= 0:
                raise GraphFormatError(f"weight must be >= 0, got {parts[2]}", lineno)
            weights[v] = w
        elif tag == "e":
            if len(parts) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            u, v = _vertex(parts[1], n, lineno), _vertex(parts[2], n, lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u + 1}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"parallel edge {u + 1}-{v + 1}", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p <n> <m>' line")
    if declared_m != len(edges):
        raise GraphFormatError(f"'p' line declares {declared_m} edges, found {len(edges)}")
    return WeightedGraph.from_edges(n, edges, [weights.get(v, 1.0) for v in range(n)])


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {tok!r}", lineno) from None


def _vertex(tok: str, n: int, lineno: int) -> int:
    v = _int(tok, lineno)
    if not 1 <= v <= n:
        raise GraphFormatError(f"vertex {v} outside 1..{n}", lineno)
    return v - 1


def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def format_graph(g: WeightedGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {g.n} {g.m}")
    lines += [f"w {v + 1} {format_weight(w)}" for v, w in enumerate(g.weights)]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> WeightedGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: WeightedGraph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g, comments))
