"""Entourages and the covering of ``Delta_R`` by the graphs of ``theta_w``."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .action import ThetaAction
from .errors import InputDomainError
from .graphs import Point, SpaceOfGraphs
from .words import FreeWord, letters_of, words_up_to


@dataclass(frozen=True)
class Entourage:
    R: int
    pairs: frozenset

    def __len__(self):
        return len(self.pairs)


def cross_pairs(X: SpaceOfGraphs, R: int) -> set:
    """Ordered pairs in different components at distance ``<= R`` (brute force over components)."""
    out = set()
    for i in range(len(X)):
        for j in range(len(X)):
            if i != j and X.spacing[i] + X.spacing[j] <= R:
                out.update((p, q) for p in X.points(i) for q in X.points(j))
    return out


def entourage(X: SpaceOfGraphs, R: int) -> Entourage:
    if R < 0:
        raise InputDomainError("R must be non-negative")
    pairs = set()
    for c, G in enumerate(X.components):
        D = G.distance_matrix
        us, vs = np.nonzero(D <= R)
        pairs.update((Point(c, int(u)), Point(c, int(v))) for u, v in zip(us, vs))
    pairs |= cross_pairs(X, R)
    return Entourage(R, frozenset(pairs))


def diagonal_of(action: ThetaAction, w: FreeWord) -> set:
    arr = action.array(w)
    pts = action.space.point_of_index
    return {(pts[x], pts[arr[x]]) for x in np.nonzero(arr >= 0)[0]}


def _edge_letters(action: ThetaAction, c: int):
    """``(vertex, letter) -> neighbour``: moving along a letter from a vertex."""
    moves = {}
    for e in action.labelling.edges:
        if e.c == c:
            moves[(e.tail, (e.gen, 1))] = e.head
            moves[(e.head, (e.gen, -1))] = e.tail
    return moves


def geodesic_word(action: ThetaAction, c: int, x: int, y: int, moves=None) -> FreeWord:
    """Word ``w`` with ``theta_w(x) = y`` spelled along a geodesic from ``x`` to ``y``.

    Among geodesics the letter sequence read from ``x`` is lexicographically
    least in the order ``a1 < a1^-1 < a2 < ...``.  The word is that sequence
    reversed, since the last letter acts first.
    """
    G = action.space.components[c]
    D = G.distance_matrix
    moves = _edge_letters(action, c) if moves is None else moves
    order = letters_of(action.k)
    path, v = [], x
    while v != y:
        for letter in order:
            u = moves.get((v, letter))
            if u is not None and D[u, y] == D[v, y] - 1:
                path.append(letter)
                v = u
                break
        else:
            raise InputDomainError(f"component {c}: no labelled edge leads from {v} towards {y}")
    return FreeWord.reduced(reversed(path))


@dataclass
class CoverReport:
    R: int
    i0: int
    words_used: list
    covered: int
    diagonal: int
    exceptional_pairs: set
    total_pairs: int
    verdict: str
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "R": self.R,
            "i0": self.i0,
            "words_used": [str(w) for w in self.words_used],
            "covered": self.covered,
            "diagonal": self.diagonal,
            "exceptional": len(self.exceptional_pairs),
            "exceptional_cross": sum(1 for p, q in self.exceptional_pairs if p.component != q.component),
            "total_pairs": self.total_pairs,
            "witnesses": self.witnesses[:10],
        }


def cover_at_infinity(action: ThetaAction, R: int, i0: int = 1) -> CoverReport:
    """Cover the within-component pairs of ``Delta_R`` by ``theta``-diagonals.

    ``i0`` is a 1-based component cutoff.  Every pair ``(x, y)`` at distance
    ``0 < r <= R`` inside a component is matched to the reduced word spelled
    along a geodesic; the match is replayed through ``theta``.  Cross-component
    pairs, and unmatched pairs below ``i0``, form the exceptional set ``F_R``.
    """
    if R < 1:
        raise InputDomainError("R must be >= 1")
    X = action.space
    used = set()
    covered = diag = 0
    F = set()
    witnesses = []
    ok = True
    for c, G in enumerate(X.components):
        moves = _edge_letters(action, c)
        D = G.distance_matrix
        off = X.offsets[c]
        for x in range(G.vertex_count):
            for y in np.nonzero(D[x] <= R)[0]:
                y = int(y)
                if x == y:
                    diag += 1
                    continue
                r = int(D[x, y])
                p, q = Point(c, x), Point(c, y)
                try:
                    w = geodesic_word(action, c, x, y, moves)
                    hit = len(w) <= r and action.array(w)[off + x] == off + y
                except InputDomainError:
                    w, hit = None, False
                if hit:
                    covered += 1
                    used.add(w)
                else:
                    F.add((p, q))
                    if c + 1 >= i0:
                        ok = False
                        witnesses.append({"pair": [list(p), list(q)], "word": None if w is None else str(w)})
    cross = cross_pairs(X, R)
    F |= cross
    total = covered + diag + len(F)
    if any(len(w) > R for w in used):
        ok = False
    return CoverReport(R, i0, sorted(used), covered, diag, F, total, "PASS" if ok else "FAIL", witnesses)


def orbit_pairs(action: ThetaAction, i: int, L: int) -> set:
    """``{(x, theta_w(x)) : |w| <= L}`` restricted to component ``i``."""
    X = action.space
    off, n = X.offsets[i], X.sizes[i]
    pts = X.point_of_index
    out = set()
    for w in words_up_to(action.k, L):
        seg = action.array(w)[off:off + n]
        out.update((pts[off + x], pts[seg[x]]) for x in np.nonzero(seg >= 0)[0])
    return out


def bfs_ball_pairs(X: SpaceOfGraphs, i: int, L: int) -> set:
    """Oracle for :func:`orbit_pairs` on a connected labelling: pairs within distance ``L``."""
    G = X.components[i]
    out = set()
    for s in range(G.vertex_count):
        dist = {s: 0}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            if dist[u] == L:
                continue
            for v in G.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    dq.append(v)
        out.update((Point(i, s), Point(i, v)) for v in dist)
    return out
