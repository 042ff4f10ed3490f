"""Directed weighted graphs and their lifted window graphs.

A window of width ``w`` is a directed walk of ``w`` edges.  The window graph of
width ``w`` has the ``(w-1)``-edge walks as vertices and the ``w``-edge walks as
arcs, each arc joining a walk to its one-step shift.  For ``w = 2`` the vertices
are the edges of the base graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import AlgebraInstance


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class DirectedWeightedGraph:
    n: int
    weights: dict = field(compare=True)
    succ: tuple = field(init=False, repr=False, compare=False)
    pred: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ = [[] for _ in range(self.n)]
        pred = [[] for _ in range(self.n)]
        for (u, v) in sorted(self.weights):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            succ[u].append(v)
            pred[v].append(u)
        object.__setattr__(self, "succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "pred", tuple(tuple(p) for p in pred))

    @classmethod
    def from_edges(cls, n: int, edges) -> "DirectedWeightedGraph":
        """Build from ``(u, v, w)`` triples; a repeated ordered pair is an error."""
        weights = {}
        for u, v, w in edges:
            if (u, v) in weights:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            weights[(u, v)] = w
        return cls(n, weights)

    @property
    def m(self) -> int:
        return len(self.weights)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list:
        return sorted(self.weights)

    def w(self, u: int, v: int):
        return self.weights[(u, v)]

    def in_degree(self, v: int) -> int:
        return len(self.pred[v])

    def out_degree(self, v: int) -> int:
        return len(self.succ[v])

    def max_degree(self) -> int:
        return max((self.in_degree(v) + self.out_degree(v) for v in self.vertices), default=0)

    def is_dag(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self):
        indeg = [self.in_degree(v) for v in self.vertices]
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            u = ready.pop()
            order.append(u)
            for v in self.succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        return order if len(order) == self.n else None

    def longest_path_edges(self) -> int:
        """Edge count of the longest path; only defined on DAGs."""
        order = self.topological_order()
        if order is None:
            raise ValueError("longest path is unbounded on a cyclic graph")
        depth = [0] * self.n
        for u in order:
            for v in self.succ[u]:
                depth[v] = max(depth[v], depth[u] + 1)
        return max(depth, default=0)

    def is_path(self, vertices) -> bool:
        return all((a, b) in self.weights for a, b in zip(vertices, vertices[1:]))

    def path_weights(self, vertices) -> tuple:
        return tuple(self.weights[(a, b)] for a, b in zip(vertices, vertices[1:]))


def load_graph(path, alg: AlgebraInstance) -> DirectedWeightedGraph:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None
    return graph_from_dict(doc, alg)


def graph_from_dict(doc: dict, alg: AlgebraInstance) -> DirectedWeightedGraph:
    n = doc.get("vertices") if isinstance(doc, dict) else None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GraphFormatError("'vertices' must be a positive integer")
    edges = []
    for e in doc.get("edges", []):
        try:
            u, v, literal = e["from"], e["to"], e["weight"]
        except (KeyError, TypeError):
            raise GraphFormatError(f"malformed edge entry {e!r}") from None
        for x in (u, v):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise GraphFormatError(f"vertex {x!r} out of range 0..{n - 1}")
        edges.append((u, v, alg.parse(literal)))
    return DirectedWeightedGraph.from_edges(n, edges)


def graph_to_dict(g: DirectedWeightedGraph, alg: AlgebraInstance) -> dict:
    return {
        "vertices": g.n,
        "edges": [
            {"from": u, "to": v, "weight": str(alg.render(g.w(u, v)))} for (u, v) in g.edges()
        ],
    }


def walks(g: DirectedWeightedGraph, length: int) -> list:
    """All walks of ``length`` edges as vertex tuples, in lexicographic order."""
    if length == 0:
        return [(v,) for v in g.vertices]
    out = []
    stack = [(u, v) for (u, v) in reversed(g.edges())]
    while stack:
        walk = stack.pop()
        if len(walk) == length + 1:
            out.append(walk)
            continue
        for nxt in reversed(g.succ[walk[-1]]):
            stack.append(walk + (nxt,))
    return out


def walk_count(g: DirectedWeightedGraph, length: int) -> int:
    """Number of ``length``-edge walks, by dynamic programming over adjacency."""
    ending = [1] * g.n
    for _ in range(length):
        ending = [sum(ending[u] for u in g.pred[v]) for v in g.vertices]
    return sum(ending)


@dataclass(frozen=True)
class WindowGraph:
    width: int
    vertices: tuple
    arcs: tuple

    def arc_endpoints(self, arc: tuple) -> tuple:
        return arc[:-1], arc[1:]


def build_window_graph(g: DirectedWeightedGraph, width: int) -> WindowGraph:
    if width < 2:
        raise ValueError(f"window width must be at least 2, got {width}")
    return WindowGraph(width, tuple(walks(g, width - 1)), tuple(walks(g, width)))


def window_counts(g: DirectedWeightedGraph) -> tuple[int, int]:
    """``(|E|, sum over u of indeg(u) * outdeg(u))`` straight from the degree tables."""
    return g.m, sum(g.in_degree(u) * g.out_degree(u) for u in g.vertices)


def enumerate_windows_into(g: DirectedWeightedGraph, v: int, width: int = 2) -> list:
    """Walks of ``width`` edges ending at ``v``, lexicographic by vertex sequence."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} not in graph")
    partial = [(v,)]
    for _ in range(width):
        partial = [(u,) + w for w in partial for u in g.pred[w[0]]]
    return sorted(partial)


def windows_by_terminal(g: DirectedWeightedGraph, width: int = 2) -> tuple:
    return tuple(enumerate_windows_into(g, v, width) for v in g.vertices)
