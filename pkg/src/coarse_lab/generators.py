"""Example families: cycle box spaces, SL2(F_p) Cayley graphs, random
large-girth regular graphs and the Wang doubling of a space of graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InputDomainError, ResourceExhaustedError
from .graphs import Graph, SpaceOfGraphs, bfs_distances, cycle_graph, diameter, girth

DEFAULT_RETRIES = 10_000

SL2_GENERATORS = (((1, 1), (0, 1)), ((1, 0), (1, 1)))


class FamilyKind(str, Enum):
    CYCLES = "cycles"
    SL2 = "sl2"
    RANDOM_REGULAR = "random"
    WANG = "wang"


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    parameters: dict

    def build(self):
        p = self.parameters
        if self.kind is FamilyKind.CYCLES:
            return cycles_family(p["lengths"])
        if self.kind is FamilyKind.SL2:
            return sl2_family(p["primes"])
        if self.kind is FamilyKind.RANDOM_REGULAR:
            return random_regular_large_girth(p["degree"], p["sizes"], p.get("girth_min", 3), p.get("seed", 0))
        if self.kind is FamilyKind.WANG:
            base = FamilySpec(FamilyKind(p["base"]), p).build()
            return wang_space(base, p["columns"])
        raise InputDomainError(f"unknown family {self.kind}")


def _strictly_increasing(xs, what):
    xs = list(xs)
    if not xs:
        raise InputDomainError(f"{what} must be non-empty")
    for a, b in zip(xs, xs[1:]):
        if b <= a:
            raise InputDomainError(f"{what} must be strictly increasing, got {xs}")
    return xs


def cycles_family(lengths: Sequence[int]) -> SpaceOfGraphs:
    lengths = _strictly_increasing(lengths, "lengths")
    return SpaceOfGraphs(tuple(cycle_graph(n) for n in lengths))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def sl2_elements(p: int) -> list:
    """All 2x2 matrices over F_p with determinant 1, as flat tuples (a, b, c, d)."""
    return [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]


def sl2_cayley(p: int) -> Graph:
    """Cayley graph of SL2(F_p) for {A, A^-1, B, B^-1} (right multiplication)."""
    elems = sl2_elements(p)
    index = {m: i for i, m in enumerate(elems)}
    edges = set()
    for (a, b), (c, d) in SL2_GENERATORS:
        for m in elems:
            x, y, z, w = m
            prod = ((x * a + y * c) % p, (x * b + y * d) % p, (z * a + w * c) % p, (z * b + w * d) % p)
            u, v = index[m], index[prod]
            edges.add((min(u, v), max(u, v)))
    return Graph(len(elems), frozenset(edges))


def sl2_family(primes: Sequence[int]) -> SpaceOfGraphs:
    primes = _strictly_increasing(primes, "primes")
    for p in primes:
        if p < 3 or not _is_prime(p):
            raise InputDomainError(f"{p} is not an odd prime")
    return SpaceOfGraphs(tuple(sl2_cayley(p) for p in primes))


def _girth_bound(girth_min, i: int) -> int:
    if callable(girth_min):
        return int(girth_min(i))
    if isinstance(girth_min, (list, tuple)):
        return int(girth_min[i])
    return int(girth_min)


def _sample_one(degree: int, n: int, gmin: int, rng: np.random.Generator, retries: int, index: int) -> Graph:
    # configuration-model stub matching; a proposed pair is refused if it would
    # close a cycle shorter than gmin (which also rules out loops and multi-edges)
    gmin = max(gmin, 3)
    for _ in range(retries):
        stubs = np.repeat(np.arange(n), degree)
        rng.shuffle(stubs)
        stubs = list(stubs)
        adj = [set() for _ in range(n)]
        edges = set()
        stuck = False
        while stubs:
            u = stubs.pop()
            near = bfs_distances(_AdjView(adj), u, limit=gmin - 2)
            ok = [t for t, v in enumerate(stubs) if v not in near]
            if not ok:
                stuck = True
                break
            v = stubs.pop(ok[rng.integers(len(ok))])
            adj[u].add(v)
            adj[v].add(u)
            edges.add((min(u, v), max(u, v)))
        if stuck:
            continue
        G = Graph(n, frozenset(edges))
        if G.is_connected() and girth(G) >= gmin:
            return G
    raise ResourceExhaustedError(f"no {degree}-regular graph on {n} vertices with girth >= {gmin} "
                                 f"found for component {index} within {retries} attempts")


class _AdjView:
    """Adapter so bfs_distances can walk a mutable adjacency list."""

    def __init__(self, adj):
        self.adjacency = adj


def random_regular_large_girth(degree: int, sizes: Sequence[int], girth_min=3, seed: int = 0,
                               retries: int = DEFAULT_RETRIES) -> SpaceOfGraphs:
    """Seeded sequence of connected ``degree``-regular graphs with ``girth >= girth_min(i)``.

    ``girth_min`` may be an int, a per-index sequence or a callable of the
    0-based component index.
    """
    sizes = _strictly_increasing(sizes, "sizes")
    for n in sizes:
        if (degree * n) % 2:
            raise InputDomainError(f"degree*size must be even (degree {degree}, size {n})")
    if degree < 2 or degree % 2:
        raise InputDomainError(f"degree must be an even integer >= 2, got {degree}")
    for n in sizes:
        if n <= degree:
            raise InputDomainError(f"size {n} too small for a simple {degree}-regular graph")
    rng = np.random.default_rng(seed)
    comps = []
    for i, n in enumerate(sizes):
        child = np.random.default_rng(rng.integers(2**63))
        comps.append(_sample_one(degree, n, _girth_bound(girth_min, i), child, retries, i))
    return SpaceOfGraphs(tuple(comps))


@dataclass(frozen=True, eq=False)
class WangSpace:
    """Columns of copies of a base space: component ``(i, j)`` is ``X_i``.

    ``layout[c] = (i, j)`` (both 1-based) for component index ``c`` of
    ``space``; spacing is ``s_{i,j} = i + j + max_{k<=i} diam(X_k)``.
    """

    base: SpaceOfGraphs
    columns: int
    layout: tuple
    space: SpaceOfGraphs

    @cached_property
    def component_of(self) -> dict:
        return {ij: c for c, ij in enumerate(self.layout)}

    def rectangle(self, i: int, j: int) -> list:
        """Component indices inside ``R_{i,j}`` (rows ``<= i``, columns ``<= j``)."""
        return [c for c, (a, b) in enumerate(self.layout) if a <= i and b <= j]


def _wang_spacing(base_comps, layout):
    running, diam_upto = 0, []
    for G in base_comps:
        running = max(running, diameter(G))
        diam_upto.append(running)
    return tuple(i + j + diam_upto[i - 1] for i, j in layout)


def wang_space(base: SpaceOfGraphs, columns: int) -> WangSpace:
    if len(base) == 0:
        raise InputDomainError("base space must be non-empty")
    if columns < 1:
        raise InputDomainError(f"columns must be >= 1, got {columns}")
    layout = tuple((i, j) for i in range(1, len(base) + 1) for j in range(1, columns + 1))
    comps = tuple(base.components[i - 1] for i, _ in layout)
    space = SpaceOfGraphs(comps, _wang_spacing(base.components, layout))
    return WangSpace(base, columns, layout, space)


def wang_from_layout(comps: Sequence[Graph], layout) -> WangSpace:
    """Rebuild a WangSpace from a serialized component list and layout."""
    layout = tuple(tuple(int(x) for x in ij) for ij in layout)
    if len(layout) != len(comps):
        raise InputDomainError("layout: expected one (i, j) pair per component")
    rows = max(i for i, _ in layout)
    columns = max(j for _, j in layout)
    expected = tuple((i, j) for i in range(1, rows + 1) for j in range(1, columns + 1))
    if layout != expected:
        raise InputDomainError("layout: expected the row-major enumeration of a full rectangle")
    base_comps = tuple(comps[c] for c, (_, j) in enumerate(layout) if j == 1)
    for c, (i, _) in enumerate(layout):
        if comps[c] != base_comps[i - 1]:
            raise InputDomainError(f"layout: component {c} differs from its row's base graph")
    base = SpaceOfGraphs(base_comps)
    return wang_space(base, columns)
