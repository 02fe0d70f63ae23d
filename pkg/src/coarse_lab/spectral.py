"""Laplacians, spectral gaps, expander certificates and ghost classification.

The Laplacian of a d-regular graph is normalized as ``(1/2)(I - A/d)`` so
its spectrum lies in ``[0, 1]`` and its kernel is the constants.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DisconnectedComponentError, InputDomainError, StructuralError
from .graphs import Graph, SpaceOfGraphs, max_degree

ZERO_TOL = 1e-9
NORMALIZATION = "(1/2)(I - A/d)"


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("COARSE_LAB_THREADS", os.cpu_count() or 1)))
    except ValueError:
        return 1


def _map_blocks(fn, items):
    items = list(items)
    workers = min(thread_count(), len(items)) or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True, eq=False)
class Laplacian:
    component_index: Optional[int]
    degree: int
    matrix: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def _regular_degree(G: Graph) -> int:
    degs = {len(a) for a in G.adjacency}
    if len(degs) != 1:
        raise StructuralError(f"graph is not regular (degrees {sorted(degs)})")
    d = degs.pop()
    if d < 1:
        raise StructuralError("graph has no edges")
    return d


def graph_laplacian(G: Graph, component_index: Optional[int] = None) -> Laplacian:
    d = _regular_degree(G)
    n = G.vertex_count
    M = np.zeros((n, n), dtype=np.int64)
    for u, v in G.edges:
        M[u, v] = M[v, u] = -1
    M[np.arange(n), np.arange(n)] = d
    if np.any(M.sum(axis=1) != 0):
        raise StructuralError("integer Laplacian has a non-zero row sum")
    return Laplacian(component_index, d, M / (2.0 * d))


def laplacian(X: SpaceOfGraphs, i: int) -> Laplacian:
    try:
        return graph_laplacian(X.components[i], i)
    except StructuralError as exc:
        raise StructuralError(f"component {i}: {exc}") from None


def spectral_gap(L: Laplacian) -> float:
    """Smallest non-zero eigenvalue; the kernel must be one-dimensional."""
    ev = np.sort(L.eigenvalues)
    scale = max(1.0, float(np.abs(ev).max()))
    kernel = int(np.sum(np.abs(ev) <= ZERO_TOL * scale))
    if kernel != 1:
        where = "" if L.component_index is None else f"component {L.component_index}: "
        raise DisconnectedComponentError(f"{where}kernel dimension {kernel}, expected 1")
    return float(ev[kernel])


def gaps(X: SpaceOfGraphs) -> list:
    return _map_blocks(lambda i: spectral_gap(laplacian(X, i)), range(len(X)))


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass
class ExpanderCertificate:
    degree_bound: int
    sizes: tuple
    gaps: tuple
    c: float
    c_min: float
    verdict: Verdict
    reason: str = ""
    witness: Optional[int] = None
    normalization: str = NORMALIZATION

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "witness": self.witness,
            "degree_bound": self.degree_bound,
            "sizes": list(self.sizes),
            "gaps": [round(g, 12) for g in self.gaps],
            "c": round(self.c, 12),
            "c_min": self.c_min,
            "normalization": self.normalization,
        }


def certify_expander(X: SpaceOfGraphs, c_min: float) -> ExpanderCertificate:
    """PASS iff sizes strictly increase (>= 2 components), degrees are
    uniformly bounded and every spectral gap is at least ``c_min``."""
    sizes = X.sizes
    deg = max(max_degree(G) for G in X.components)
    gs = tuple(gaps(X))
    c = min(gs)
    cert = ExpanderCertificate(deg, sizes, gs, c, c_min, Verdict.PASS)
    if len(sizes) < 2:
        cert.verdict, cert.reason = Verdict.FAIL, "need at least two components to witness growing sizes"
        cert.witness = 0
    elif any(b <= a for a, b in zip(sizes, sizes[1:])):
        i = next(i for i, (a, b) in enumerate(zip(sizes, sizes[1:])) if b <= a)
        cert.verdict, cert.reason, cert.witness = Verdict.FAIL, "sizes not strictly increasing", i + 1
    else:
        low = [i for i, g in enumerate(gs) if g < c_min]
        if low:
            cert.verdict, cert.witness = Verdict.FAIL, low[0]
            cert.reason = f"spectral gap {gs[low[0]]:.6g} of component {low[0]} is below c_min={c_min}"
    return cert


# ---------------------------------------------------------------- block operators


class OperatorTag(str, Enum):
    GHOST_P = "GHOST_P"
    WANG_Q = "WANG_Q"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True, eq=False)
class BlockOperator:
    blocks: dict
    description: OperatorTag = OperatorTag.CUSTOM
    sizes: tuple = ()
    wang: object = None

    def __post_init__(self):
        for i, B in self.blocks.items():
            if B.ndim != 2 or B.shape[0] != B.shape[1]:
                raise InputDomainError(f"block {i} is not square")
            if self.sizes and B.shape[0] != self.sizes[i]:
                raise InputDomainError(f"block {i} has size {B.shape[0]}, component has {self.sizes[i]}")


def _projection_block(n: int) -> np.ndarray:
    return np.full((n, n), 1.0 / n)


def ghost_projection(X: SpaceOfGraphs) -> BlockOperator:
    for i in range(len(X)):
        laplacian(X, i)  # regularity check
    blocks = {i: _projection_block(n) for i, n in enumerate(X.sizes)}
    return BlockOperator(blocks, OperatorTag.GHOST_P, X.sizes)


def wang_projection(Y) -> BlockOperator:
    base_p = ghost_projection(Y.base)
    blocks = {c: base_p.blocks[i - 1].copy() for c, (i, _) in enumerate(Y.layout)}
    return BlockOperator(blocks, OperatorTag.WANG_Q, Y.space.sizes, Y)


def kernel_projection(L: Laplacian) -> np.ndarray:
    """Dense eigenprojection onto the numerical kernel of ``L``."""
    ev, vecs = np.linalg.eigh(L.matrix)
    scale = max(1.0, float(np.abs(ev).max()))
    K = vecs[:, np.abs(ev) <= ZERO_TOL * scale]
    return K @ K.T


class GhostVerdict(str, Enum):
    GHOST = "GHOST"
    NOT_GHOST = "NOT_GHOST"
    UNDECIDED_AT_TRUNCATION = "UNDECIDED_AT_TRUNCATION"


@dataclass
class GhostReport:
    epsilon: float
    offending_blocks: tuple
    verdict: GhostVerdict
    witness: Optional[dict] = None
    per_block_max: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "epsilon": self.epsilon,
            "offending": list(self.offending_blocks),
            "witness": self.witness,
            "per_block_max": [round(x, 15) for x in self.per_block_max],
        }


def _exact(eps) -> Fraction:
    # decimal reading, so 0.2 means 1/5 rather than its binary neighbour
    return Fraction(repr(eps)) if isinstance(eps, float) else Fraction(eps)


def classify_ghost(T: BlockOperator, epsilon: float) -> GhostReport:
    """Decide ghostness for closed-form operators; report truncation data otherwise.

    Offending blocks are those holding an entry of absolute value ``>= epsilon``.
    """
    if not epsilon > 0:
        raise InputDomainError(f"epsilon must be positive, got {epsilon}")
    idx = sorted(T.blocks)
    per_max = tuple(float(np.abs(T.blocks[i]).max()) if T.blocks[i].size else 0.0 for i in idx)
    eps = _exact(epsilon)

    if T.description is OperatorTag.GHOST_P:
        offending = tuple(i for i in idx if Fraction(1, T.sizes[i]) >= eps)
        return GhostReport(epsilon, offending, GhostVerdict.GHOST, None, per_max)

    if T.description is OperatorTag.WANG_Q:
        Y = T.wang
        offending = tuple(c for c in idx if Fraction(1, T.sizes[c]) >= eps)
        n1 = Y.base.sizes[0]
        witness = {
            "column": 1,
            "direction": "j",
            "value": 1.0 / n1,
            "epsilon_star": 1.0 / n1,
            "blocks": [c for c, (i, _) in enumerate(Y.layout) if i == 1],
        }
        return GhostReport(epsilon, offending, GhostVerdict.NOT_GHOST, witness, per_max)

    offending = tuple(i for i, m in zip(idx, per_max) if m >= epsilon)
    return GhostReport(epsilon, offending, GhostVerdict.UNDECIDED_AT_TRUNCATION, None, per_max)


def rectangle_witness(Y, i: int, j: int, epsilon: float) -> Optional[tuple]:
    """A block ``(k, l)`` outside the rectangle ``R_{i,j}`` whose q-entries are ``>= epsilon``.

    Column ``k = 1`` carries the constant ``1/|X_1|`` in every row ``l``, so
    ``(1, j+1)`` works whenever ``epsilon <= 1/|X_1|``; the block may lie
    past the stored truncation, in which case its value is read from the base.
    """
    value = Fraction(1, Y.base.sizes[0])
    if value < _exact(epsilon):
        return None
    return (1, j + 1), float(value)
