"""Finite models of spaces of graphs, partial translations and free-group
partial actions, with checks of their algebraic and metric properties."""

from .errors import (
    CoarseLabError,
    DisconnectedComponentError,
    InputDomainError,
    ResourceExhaustedError,
    StructuralError,
    TruncationInsufficientError,
)
from .graphs import Graph, Point, SpaceOfGraphs, diameter, distance, girth, max_degree
from .generators import FamilyKind, FamilySpec, WangSpace, cycles_family, random_regular_large_girth, sl2_family, wang_space
from .words import FreeWord
from .monoid import PartialTranslation, PrefixElement, compose, invert, is_idempotent, leq, prefix_multiply, prefix_sigma, translation_length
from .orientation import EdgeLabelling, orient_labelling, petersen_partition, validate_labelling
from .action import ZERO, ThetaAction, theta
from .spectral import certify_expander, classify_ghost, ghost_projection, laplacian, spectral_gap, wang_projection

__version__ = "0.1.0"

__all__ = [
    "CoarseLabError",
    "DisconnectedComponentError",
    "InputDomainError",
    "ResourceExhaustedError",
    "StructuralError",
    "TruncationInsufficientError",
    "Graph",
    "Point",
    "SpaceOfGraphs",
    "diameter",
    "distance",
    "girth",
    "max_degree",
    "FamilyKind",
    "FamilySpec",
    "WangSpace",
    "cycles_family",
    "random_regular_large_girth",
    "sl2_family",
    "wang_space",
    "FreeWord",
    "PartialTranslation",
    "PrefixElement",
    "compose",
    "invert",
    "is_idempotent",
    "leq",
    "prefix_multiply",
    "prefix_sigma",
    "translation_length",
    "EdgeLabelling",
    "orient_labelling",
    "petersen_partition",
    "validate_labelling",
    "ZERO",
    "ThetaAction",
    "theta",
    "certify_expander",
    "classify_ghost",
    "ghost_projection",
    "laplacian",
    "spectral_gap",
    "wang_projection",
]
