"""Independent oracles shared by the tests."""

import itertools
from collections import deque

import numpy as np

from coarse_lab.graphs import Graph


def bfs_all_pairs(G: Graph) -> dict:
    out = {}
    for s in range(G.vertex_count):
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for v in G.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    q.append(v)
        out[s] = dist
    return out


def has_nonbacktracking_closed_walk(G: Graph, max_len: int) -> bool:
    """Brute-force walk enumeration: is there a closed non-backtracking walk
    of length 3..max_len (which in a simple graph contains a cycle)?"""
    adj = G.adjacency
    for s in range(G.vertex_count):
        stack = [(s, -1, 0)]
        while stack:
            v, prev, n = stack.pop()
            if n >= max_len:
                continue
            for w in adj[v]:
                if w == prev:
                    continue
                if w == s and n + 1 >= 3:
                    return True
                stack.append((w, v, n + 1))
    return False


def random_graph(rng, n, max_deg, p=0.5):
    edges = set()
    deg = [0] * n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() < p and deg[u] < max_deg and deg[v] < max_deg:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, frozenset(edges))


def random_bounded_graph(rng, n, max_deg, m):
    """Up to ``m`` random edges with all degrees <= max_deg (O(m) expected)."""
    edges = set()
    deg = [0] * n
    tries = 0
    while len(edges) < m and tries < 20 * m + 100:
        tries += 1
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u == v or deg[u] >= max_deg or deg[v] >= max_deg or (min(u, v), max(u, v)) in edges:
            continue
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    return Graph(n, frozenset(edges))


def sl2_order_by_enumeration(p):
    return sum(1 for a, b, c, d in itertools.product(range(p), repeat=4) if (a * d - b * c) % p == 1)


def cycle_gap(n):
    return (1 - np.cos(2 * np.pi / n)) / 2
