"""Finite graphs and spaces of graphs with an explicit coarse-disjoint-union metric.

Component indices are 0-based everywhere in the API.  The spacing formula
uses the 1-based position ``i``: ``s_i = i + max_{k <= i} diam(X_k)``, and
points in different components ``i != j`` are at distance ``s_i + s_j``.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputDomainError, StructuralError

INF = math.inf


class Point(NamedTuple):
    component: int
    vertex: int


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. vertex_count-1``.

    Edges are stored as ``(u, v)`` with ``u < v``.
    """

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InputDomainError("vertex_count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InputDomainError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputDomainError(f"edge {(u, v)} has an endpoint outside 0..{self.vertex_count - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = [tuple(e) for e in edges]
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputDomainError(f"parallel edge {key}")
            seen.add(key)
        return cls(n, frozenset(edges))

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple:
        """Sorted neighbour tuples, one per vertex."""
        nbrs = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances (``inf`` between different components)."""
        n = self.vertex_count
        if n == 0:
            return np.zeros((0, 0))
        rows, cols = [], []
        for u, v in self.edges:
            rows += [u, v]
            cols += [v, u]
        m = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        return shortest_path(m, method="D", unweighted=True, directed=False)

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        return len(bfs_distances(self, 0)) == self.vertex_count


def bfs_distances(G: Graph, source: int, limit: int | None = None) -> dict:
    """Hop distances from ``source``, optionally only up to ``limit``."""
    dist = {source: 0}
    queue = deque([source])
    adj = G.adjacency
    while queue:
        u = queue.popleft()
        d = dist[u]
        if limit is not None and d >= limit:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def girth(G: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests.

    BFS from every vertex; a non-tree edge between depths ``a`` and ``b``
    closes a cycle of length at most ``a + b + 1``.  Each search stops once
    it cannot beat the current best.
    """
    best = INF
    adj = G.adjacency
    for s in range(G.vertex_count):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, du + dist[w] + 1)
    return best


def diameter(G: Graph) -> int:
    if G.vertex_count == 0:
        raise StructuralError("diameter of the empty graph is undefined")
    D = G.distance_matrix
    if not np.all(np.isfinite(D)):
        raise StructuralError("diameter requires a connected graph")
    return int(D.max())


def max_degree(G: Graph) -> int:
    return max((len(a) for a in G.adjacency), default=0)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputDomainError(f"cycle length must be >= 3, got {n}")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, frozenset(outer + spokes + inner))


def default_spacing(components: Sequence[Graph]) -> tuple:
    spacing = []
    running = 0
    for i, G in enumerate(components, start=1):
        running = max(running, diameter(G))
        spacing.append(i + running)
    return tuple(spacing)


@dataclass(frozen=True, eq=False)
class SpaceOfGraphs:
    """Coarse disjoint union of finite connected graphs.

    ``spacing`` defaults to ``s_i = i + max_{k<=i} diam(X_k)``; callers
    (e.g. Wang spaces) may pass their own, subject to ``s_i >= diam(X_i)``.
    """

    components: tuple
    spacing: tuple = None

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        for i, G in enumerate(comps):
            if G.vertex_count == 0:
                raise StructuralError(f"component {i} is empty")
            if not G.is_connected():
                raise StructuralError(f"component {i} is not connected")
        if self.spacing is None:
            object.__setattr__(self, "spacing", default_spacing(comps))
        else:
            spacing = tuple(int(s) for s in self.spacing)
            if len(spacing) != len(comps):
                raise InputDomainError("spacing must have one entry per component")
            for i, (s, G) in enumerate(zip(spacing, comps)):
                if s <= 0 or s < diameter(G):
                    raise InputDomainError(f"spacing {s} at component {i} is below its diameter")
            object.__setattr__(self, "spacing", spacing)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SpaceOfGraphs):
            return NotImplemented
        return self.components == other.components and self.spacing == other.spacing

    def __hash__(self):
        return hash((self.components, self.spacing))

    def __len__(self):
        return len(self.components)

    @cached_property
    def sizes(self) -> tuple:
        return tuple(G.vertex_count for G in self.components)

    @cached_property
    def offsets(self) -> tuple:
        """Start of each component in the global point numbering."""
        out, acc = [], 0
        for n in self.sizes:
            out.append(acc)
            acc += n
        return tuple(out)

    @property
    def point_count(self) -> int:
        return sum(self.sizes)

    def points(self, component: int | None = None) -> list:
        if component is not None:
            return [Point(component, v) for v in range(self.sizes[component])]
        return [Point(c, v) for c, n in enumerate(self.sizes) for v in range(n)]

    def index(self, p: Point) -> int:
        return self.offsets[p.component] + p.vertex

    @cached_property
    def point_of_index(self) -> tuple:
        return tuple(self.points())

    def check_point(self, p) -> Point:
        c, v = p
        if not (0 <= c < len(self.components)) or not (0 <= v < self.sizes[c]):
            raise InputDomainError(f"invalid point {tuple(p)}")
        return Point(c, v)


def distance(X: SpaceOfGraphs, p, q) -> int:
    p, q = X.check_point(p), X.check_point(q)
    if p.component == q.component:
        return int(X.components[p.component].distance_matrix[p.vertex, q.vertex])
    return X.spacing[p.component] + X.spacing[q.component]


# ---------------------------------------------------------------- JSON format


def space_to_dict(X: SpaceOfGraphs, layout=None) -> dict:
    doc = {
        "components": [
            {"n": G.vertex_count, "edges": [list(e) for e in G.sorted_edges]} for G in X.components
        ]
    }
    if layout is not None:
        doc["layout"] = [list(ij) for ij in layout]
    return doc


def graphs_from_dict(doc) -> list:
    """Parse the ``components`` list; errors name the offending location."""
    if not isinstance(doc, dict) or not isinstance(doc.get("components"), list):
        raise InputDomainError("top level: expected an object with a 'components' list")
    out = []
    for i, comp in enumerate(doc["components"]):
        where = f"components[{i}]"
        if not isinstance(comp, dict) or not isinstance(comp.get("n"), int) or not isinstance(comp.get("edges"), list):
            raise InputDomainError(f"{where}: expected {{'n': int, 'edges': [[u, v], ...]}}")
        for j, e in enumerate(comp["edges"]):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise InputDomainError(f"{where}.edges[{j}]: expected a pair of integers")
        try:
            out.append(Graph.from_edges(comp["n"], comp["edges"]))
        except InputDomainError as exc:
            raise InputDomainError(f"{where}: {exc}") from None
    return out


def dumps_space(X: SpaceOfGraphs, layout=None) -> str:
    return json.dumps(space_to_dict(X, layout), separators=(",", ":"))


def load_space(path) -> SpaceOfGraphs:
    """Read a graph-sequence file; Wang files (with ``layout``) are rebuilt with Wang spacing."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputDomainError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    comps = graphs_from_dict(doc)
    if "layout" in doc:
        from .generators import wang_from_layout

        return wang_from_layout(comps, doc["layout"]).space
    try:
        return SpaceOfGraphs(tuple(comps))
    except StructuralError as exc:
        raise InputDomainError(f"{path}: {exc}") from None
