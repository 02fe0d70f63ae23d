"""Partial translations of a space of graphs, as an inverse monoid, and the
prefix expansion of the free group."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import InputDomainError
from .graphs import SpaceOfGraphs, distance
from .words import IDENTITY, FreeWord


class PartialTranslation:
    """Finite partial bijection of a space of graphs.

    Stored canonically as the sorted tuple of ``(x, s(x))`` pairs; equality
    is extensional.  The empty translation is the zero of the monoid.
    """

    __slots__ = ("space", "pairs", "_map", "__dict__")

    def __init__(self, space: SpaceOfGraphs, mapping: Mapping | None = None):
        mapping = dict(mapping or {})
        norm = {}
        for p, q in mapping.items():
            norm[space.check_point(p)] = space.check_point(q)
        if len(set(norm.values())) != len(norm):
            raise InputDomainError("mapping is not injective")
        self.space = space
        self.pairs = tuple(sorted(norm.items()))
        self._map = dict(self.pairs)

    @classmethod
    def _trusted(cls, space, pairs):
        obj = cls.__new__(cls)
        obj.space = space
        obj.pairs = tuple(sorted(pairs))
        obj._map = dict(obj.pairs)
        return obj

    @classmethod
    def identity(cls, space: SpaceOfGraphs, points=None) -> "PartialTranslation":
        pts = space.points() if points is None else [space.check_point(p) for p in points]
        return cls._trusted(space, [(p, p) for p in pts])

    @classmethod
    def empty(cls, space: SpaceOfGraphs) -> "PartialTranslation":
        return cls._trusted(space, ())

    def __call__(self, p):
        return self._map[p]

    def get(self, p, default=None):
        return self._map.get(p, default)

    def __contains__(self, p):
        return p in self._map

    def __len__(self):
        return len(self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def items(self):
        return self.pairs

    @cached_property
    def domain(self) -> frozenset:
        return frozenset(self._map)

    @cached_property
    def range(self) -> frozenset:
        return frozenset(self._map.values())

    @cached_property
    def displacement_bound(self) -> int:
        return max((distance(self.space, p, q) for p, q in self.pairs), default=0)

    def restrict(self, points) -> "PartialTranslation":
        keep = set(points)
        return PartialTranslation._trusted(self.space, [(p, q) for p, q in self.pairs if p in keep])

    def restrict_components(self, components) -> "PartialTranslation":
        keep = set(components)
        return PartialTranslation._trusted(self.space, [(p, q) for p, q in self.pairs if p.component in keep])

    def __eq__(self, other):
        if not isinstance(other, PartialTranslation):
            return NotImplemented
        return self.pairs == other.pairs and (self.space is other.space or self.space == other.space)

    def __hash__(self):
        return hash(self.pairs)

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self) -> "PartialTranslation":
        return invert(self)

    def __repr__(self):
        body = ", ".join(f"{tuple(p)}->{tuple(q)}" for p, q in self.pairs[:6])
        more = ", ..." if len(self.pairs) > 6 else ""
        return f"PartialTranslation({{{body}{more}}})"

    def to_json(self) -> list:
        return [[list(p), list(q)] for p, q in self.pairs]


def _same_space(s, t):
    if s.space is not t.space and s.space != t.space:
        raise InputDomainError("partial translations live on different spaces")


def compose(s: PartialTranslation, t: PartialTranslation) -> PartialTranslation:
    """``s o t``: apply ``t`` first, on the largest domain where both are defined."""
    _same_space(s, t)
    sm = s._map
    return PartialTranslation._trusted(s.space, [(x, sm[y]) for x, y in t.pairs if y in sm])


def invert(s: PartialTranslation) -> PartialTranslation:
    return PartialTranslation._trusted(s.space, [(q, p) for p, q in s.pairs])


def is_idempotent(s: PartialTranslation) -> bool:
    return all(p == q for p, q in s.pairs)


def leq(s: PartialTranslation, t: PartialTranslation) -> bool:
    """Natural partial order: ``s`` is a restriction of ``t``."""
    _same_space(s, t)
    tm = t._map
    return all(tm.get(p) == q for p, q in s.pairs)


def translation_length(s: PartialTranslation) -> int:
    return s.displacement_bound


# ---------------------------------------------------------------- prefix expansion


@dataclass(frozen=True)
class PrefixElement:
    """Element ``(X, g)`` of the prefix expansion: ``X`` a finite set of words containing ``e`` and ``g``."""

    word_set: frozenset
    g: FreeWord

    def __post_init__(self):
        ws = frozenset(self.word_set)
        object.__setattr__(self, "word_set", ws)
        if IDENTITY not in ws or self.g not in ws:
            raise InputDomainError("word_set must contain the identity and g")

    @classmethod
    def unit(cls) -> "PrefixElement":
        return cls(frozenset([IDENTITY]), IDENTITY)

    @classmethod
    def maximal(cls, g: FreeWord) -> "PrefixElement":
        return cls(frozenset([IDENTITY, g]), g)

    def __mul__(self, other: "PrefixElement") -> "PrefixElement":
        return prefix_multiply(self, other)

    def is_idempotent(self) -> bool:
        return self.g.is_identity()

    def __repr__(self):
        ws = ", ".join(str(w) for w in sorted(self.word_set))
        return f"({{{ws}}}, {self.g})"


def prefix_multiply(a: PrefixElement, b: PrefixElement) -> PrefixElement:
    """``(X, g)(Y, h) = (X u gY, gh)``."""
    return PrefixElement(a.word_set | frozenset(a.g * y for y in b.word_set), a.g * b.g)


def prefix_sigma(a: PrefixElement) -> FreeWord:
    return a.g


def prefix_leq(a: PrefixElement, b: PrefixElement) -> bool:
    """``(X, g) <= (Y, h)`` iff ``g = h`` and ``Y`` is contained in ``X``."""
    return a.g == b.g and b.word_set <= a.word_set
