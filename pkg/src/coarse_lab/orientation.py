"""Petersen edge partition and almost-k-orientations.

Pipeline per graph: join a fresh vertex to every odd-degree vertex, walk an
Euler circuit of each connected piece and orient edges along it (out- and
in-degree are then at most k), build the bipartite graph tail-copy/head-copy
and properly edge-colour it with k colours by alternating-path swaps.
Colour classes are the Petersen classes; the Euler orientation restricted
to a class has at most one out- and one in-edge per vertex.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import InputDomainError
from .graphs import Graph, SpaceOfGraphs, max_degree


def euler_orientation(G: Graph) -> list:
    """Orient every edge of ``G`` so that ``|out(v) - in(v)| <= 1``.

    Returns ``(tail, head)`` pairs in lexicographic order of the undirected edge.
    """
    n = G.vertex_count
    aux = n
    edges = list(G.sorted_edges)
    odd = [v for v in range(n) if G.degree(v) % 2]
    edges += [(v, aux) for v in odd]
    inc = defaultdict(list)
    for eid, (u, v) in enumerate(edges):
        inc[u].append((v, eid))
        inc[v].append((u, eid))
    for v in inc:
        inc[v].sort()
    used = [False] * len(edges)
    ptr = defaultdict(int)
    direction = {}

    def next_edge(v):
        lst = inc[v]
        i = ptr[v]
        while i < len(lst) and used[lst[i][1]]:
            i += 1
        ptr[v] = i
        return lst[i] if i < len(lst) else None

    # Hierholzer; every edge is traversed exactly once and oriented on traversal
    for start in sorted(inc):
        if next_edge(start) is None:
            continue
        stack = [start]
        while stack:
            v = stack[-1]
            nxt = next_edge(v)
            if nxt is None:
                stack.pop()
                continue
            w, eid = nxt
            used[eid] = True
            direction[eid] = (v, w)
            stack.append(w)
    return [direction[eid] for eid in range(len(G.sorted_edges))]


def _bipartite_colouring(arcs: list, k: int) -> list:
    """Proper k-edge-colouring of the bipartite graph tail -> ('o', v), head -> ('i', v)."""
    at = defaultdict(dict)  # node -> {colour: arc index}
    colour = [None] * len(arcs)

    def free(node):
        used = at[node]
        return next(c for c in range(k) if c not in used)

    for idx, (u, v) in enumerate(arcs):
        left, right = ("o", u), ("i", v)
        a = free(left)
        if a in at[right]:
            b = free(right)
            # swap a/b along the alternating path leaving `right` on colour a;
            # bipartiteness keeps `left` off this path
            path = []
            node, c = right, a
            while c in at[node]:
                e = at[node][c]
                path.append(e)
                t, h = arcs[e]
                node = ("o", t) if node == ("i", h) else ("i", h)
                c = b if c == a else a
            for e in path:
                t, h = arcs[e]
                for end in (("o", t), ("i", h)):
                    if at[end].get(colour[e]) == e:
                        del at[end][colour[e]]
            for e in path:
                colour[e] = b if colour[e] == a else a
                t, h = arcs[e]
                at[("o", t)][colour[e]] = e
                at[("i", h)][colour[e]] = e
        colour[idx] = a
        at[left][a] = idx
        at[right][a] = idx
    return colour


def _oriented_classes(G: Graph, k: int):
    if k < 1:
        raise InputDomainError(f"k must be >= 1, got {k}")
    if max_degree(G) > 2 * k:
        raise InputDomainError(f"max degree {max_degree(G)} exceeds 2k = {2 * k}")
    arcs = euler_orientation(G)
    colours = _bipartite_colouring(arcs, k)
    return arcs, colours


def petersen_partition(G: Graph, k: int) -> list:
    """Split ``E(G)`` into ``k`` classes, each meeting every vertex at most twice."""
    arcs, colours = _oriented_classes(G, k)
    classes = [set() for _ in range(k)]
    for (u, v), c in zip(arcs, colours):
        classes[c].add((min(u, v), max(u, v)))
    return [frozenset(c) for c in classes]


def minimal_k(X: SpaceOfGraphs) -> int:
    d = max((max_degree(G) for G in X.components), default=0)
    return max(1, (d + 1) // 2)


@dataclass(frozen=True)
class LabelledEdge:
    c: int
    tail: int
    head: int
    gen: int


@dataclass(frozen=True, eq=False)
class EdgeLabelling:
    """Directed, generator-labelled copy of every edge of a space of graphs.

    ``edges`` is sorted by ``(c, tail, head)``; generators are 1-based.
    The constructor does not validate: see :func:`validate_labelling`.
    """

    space: SpaceOfGraphs
    k: int
    edges: tuple

    def __eq__(self, other):
        return isinstance(other, EdgeLabelling) and self.k == other.k and self.edges == other.edges

    def __hash__(self):
        return hash((self.k, self.edges))

    def to_dict(self) -> dict:
        return {"k": self.k, "edges": [{"c": e.c, "tail": e.tail, "head": e.head, "gen": e.gen} for e in self.edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def orient_labelling(X: SpaceOfGraphs, k: int | None = None) -> EdgeLabelling:
    if k is None:
        k = minimal_k(X)
    out = []
    for c, G in enumerate(X.components):
        try:
            arcs, colours = _oriented_classes(G, k)
        except InputDomainError as exc:
            raise InputDomainError(f"component {c}: {exc}") from None
        out += [LabelledEdge(c, t, h, col + 1) for (t, h), col in zip(arcs, colours)]
    return EdgeLabelling(X, k, tuple(sorted(out, key=lambda e: (e.c, e.tail, e.head))))


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "violations": self.violations[:20]}


def validate_labelling(L: EdgeLabelling) -> ValidationReport:
    X = L.space
    bad = []
    seen = defaultdict(int)
    outs, ins = defaultdict(int), defaultdict(int)
    for e in L.edges:
        if not (1 <= e.gen <= L.k):
            bad.append({"kind": "generator out of range", "edge": [e.c, e.tail, e.head], "gen": e.gen})
            continue
        if not (0 <= e.c < len(X)) or (min(e.tail, e.head), max(e.tail, e.head)) not in X.components[e.c].edges:
            bad.append({"kind": "not an edge of the space", "edge": [e.c, e.tail, e.head]})
            continue
        seen[(e.c, min(e.tail, e.head), max(e.tail, e.head))] += 1
        outs[(e.c, e.tail, e.gen)] += 1
        ins[(e.c, e.head, e.gen)] += 1
    for c, G in enumerate(X.components):
        for u, v in G.sorted_edges:
            if seen[(c, u, v)] != 1:
                bad.append({"kind": "edge labelled %d times" % seen[(c, u, v)], "edge": [c, u, v]})
    for (c, v, j), m in sorted(outs.items()):
        if m > 1:
            bad.append({"kind": "out-degree", "vertex": [c, v], "gen": j, "count": m})
    for (c, v, j), m in sorted(ins.items()):
        if m > 1:
            bad.append({"kind": "in-degree", "vertex": [c, v], "gen": j, "count": m})
    if len(X) and max_degree_all(X) > 2 * L.k:
        bad.append({"kind": "k too small", "k": L.k, "max_degree": max_degree_all(X)})
    elif L.k > minimal_k(X):
        bad.append({"kind": "k not minimal", "k": L.k, "minimal": minimal_k(X)})
    return ValidationReport(not bad, bad)


def max_degree_all(X: SpaceOfGraphs) -> int:
    return max((max_degree(G) for G in X.components), default=0)


def labelling_from_dict(X: SpaceOfGraphs, doc) -> EdgeLabelling:
    if not isinstance(doc, dict) or not isinstance(doc.get("k"), int) or not isinstance(doc.get("edges"), list):
        raise InputDomainError("top level: expected {'k': int, 'edges': [...]}")
    out = []
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, dict) or not all(isinstance(e.get(f), int) for f in ("c", "tail", "head", "gen")):
            raise InputDomainError(f"edges[{i}]: expected integer fields c, tail, head, gen")
        out.append(LabelledEdge(e["c"], e["tail"], e["head"], e["gen"]))
    return EdgeLabelling(X, doc["k"], tuple(sorted(out, key=lambda e: (e.c, e.tail, e.head))))


def load_labelling(X: SpaceOfGraphs, path) -> EdgeLabelling:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputDomainError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return labelling_from_dict(X, doc)
