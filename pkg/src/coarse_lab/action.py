"""The partial action of F_k induced by an edge labelling, and its checks.

``theta(w)`` composes letters right to left: the last letter of ``w`` moves
a point first.  Internally every ``theta_w`` is an int32 array over the
global point numbering of the space, with ``-1`` where it is undefined.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import InputDomainError, StructuralError, TruncationInsufficientError
from .graphs import Point, girth
from .monoid import PartialTranslation
from .orientation import EdgeLabelling
from .words import IDENTITY, FreeWord, words_up_to

MIN_HORIZON = 3


class _Zero:
    """The zero of the Rees quotient: image of finitely supported elements."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO"

    __str__ = __repr__


ZERO = _Zero()


class ThetaAction:
    """Memoized ``w -> theta_w`` for one labelling.

    The labelling must give each vertex at most one outgoing and one
    incoming edge per generator; it need not satisfy the other labelling
    invariants, so deliberately broken labellings can be studied.
    """

    def __init__(self, labelling: EdgeLabelling):
        self.labelling = labelling
        self.space = X = labelling.space
        self.k = labelling.k
        N = X.point_count
        self._comp_of = np.repeat(np.arange(len(X)), X.sizes).astype(np.int32)
        self._letters = {}
        for j in range(1, self.k + 1):
            fwd = np.full(N, -1, dtype=np.int32)
            bwd = np.full(N, -1, dtype=np.int32)
            self._letters[(j, 1)] = fwd
            self._letters[(j, -1)] = bwd
        for e in labelling.edges:
            if not 1 <= e.gen <= self.k:
                raise StructuralError(f"generator {e.gen} outside 1..{self.k}")
            off = X.offsets[e.c]
            t, h = off + e.tail, off + e.head
            fwd, bwd = self._letters[(e.gen, 1)], self._letters[(e.gen, -1)]
            if fwd[t] >= 0 or bwd[h] >= 0:
                raise StructuralError(f"generator a{e.gen} is not a partial bijection at component {e.c}")
            fwd[t], bwd[h] = h, t
        self._cache = {IDENTITY: np.arange(N, dtype=np.int32)}
        self._lock = threading.Lock()
        self._tables = {}
        self._girths = None

    @property
    def girths(self) -> list:
        if self._girths is None:
            self._girths = [girth(G) for G in self.space.components]
        return self._girths

    def array(self, w: FreeWord) -> np.ndarray:
        a = self._cache.get(w)
        if a is not None:
            return a
        if not isinstance(w, FreeWord):
            raise InputDomainError("theta expects a reduced FreeWord")
        rest = self.array(FreeWord(w.letters[1:]))
        first = self._letters.get(w.letters[0])
        if first is None:
            raise InputDomainError(f"letter {w.letters[0]} outside F_{self.k}")
        out = np.full_like(rest, -1)
        ok = rest >= 0
        out[ok] = first[rest[ok]]
        with self._lock:
            return self._cache.setdefault(w, out)

    def to_translation(self, arr: np.ndarray) -> PartialTranslation:
        pts = self.space.point_of_index
        idx = np.nonzero(arr >= 0)[0]
        return PartialTranslation._trusted(self.space, [(pts[x], pts[arr[x]]) for x in idx])

    def from_translation(self, s: PartialTranslation) -> np.ndarray:
        arr = np.full(self.space.point_count, -1, dtype=np.int32)
        for p, q in s.pairs:
            arr[self.space.index(p)] = self.space.index(q)
        return arr

    def domain_sizes(self, arr: np.ndarray) -> list:
        return np.bincount(self._comp_of[arr >= 0], minlength=len(self.space)).tolist()

    def component_mask(self, components) -> np.ndarray:
        return np.isin(self._comp_of, list(components))


def theta(action: ThetaAction, w: FreeWord) -> PartialTranslation:
    return action.to_translation(action.array(w))


def compose_arrays(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``s o t`` on array representations."""
    out = np.full_like(t, -1)
    ok = t >= 0
    out[ok] = s[t[ok]]
    return out


def arr_leq(s: np.ndarray, t: np.ndarray) -> Optional[int]:
    """``None`` if ``s <= t``, else a point where they disagree."""
    dom = np.nonzero(s >= 0)[0]
    bad = dom[t[dom] != s[dom]]
    return None if bad.size == 0 else int(bad[0])


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int = 0
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_dict(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict, "checked": self.checked, "witnesses": self.witnesses[:10]}
        out.update(self.details)
        return out


def _pt(action, x) -> list:
    return list(action.space.point_of_index[x])


def check_dual_prehom(action: ThetaAction, L: int) -> CheckResult:
    """``theta_g theta_h <= theta_{gh}`` for all reduced ``|g|, |h| <= L``."""
    if L < 1:
        raise InputDomainError("L must be >= 1")
    words = list(words_up_to(action.k, L))
    res = CheckResult("dual_prehomomorphism", True, details={"max_len": L})
    for g in words:
        ag = action.array(g)
        for h in words:
            comp = compose_arrays(ag, action.array(h))
            bad = arr_leq(comp, action.array(g * h))
            res.checked += 1
            if bad is not None:
                res.ok = False
                res.witnesses.append({"g": str(g), "h": str(h), "point": _pt(action, bad)})
    return res


def fixed_points(action: ThetaAction, w: FreeWord, i: int) -> set:
    if w.is_identity():
        raise InputDomainError("fixed_points needs a non-empty word")
    arr = action.array(w)
    X = action.space
    off, n = X.offsets[i], X.sizes[i]
    seg = arr[off:off + n]
    return {Point(i, int(v)) for v in np.nonzero(seg == np.arange(off, off + n))[0]}


def check_freeness(action: ThetaAction, L: int) -> CheckResult:
    """No fixed points for reduced non-empty ``w`` with ``|w| < girth(X_i)``."""
    res = CheckResult("freeness_below_girth", True, details={"max_len": L})
    words = [w for w in words_up_to(action.k, L) if len(w)]
    for i, g in enumerate(action.girths):
        for w in words:
            if len(w) >= g:
                continue
            res.checked += 1
            fp = fixed_points(action, w, i)
            if fp:
                res.ok = False
                res.witnesses.append({"word": str(w), "component": i, "point": list(min(fp))})
    return res


def three_coloring(action: ThetaAction, w: FreeWord, i_start: int = 0) -> dict:
    """Greedy 3-colouring of ``x -- theta_w(x)`` on components ``>= i_start``.

    Each colour class is mapped by ``theta_w`` into the other two.
    """
    if w.is_identity():
        raise InputDomainError("three_coloring needs a non-empty word")
    X = action.space
    arr = action.array(w)
    start = X.offsets[i_start] if i_start < len(X) else X.point_count
    inv = np.full_like(arr, -1)
    dom = np.nonzero(arr >= 0)[0]
    inv[arr[dom]] = dom
    colour = {}
    for x in range(start, X.point_count):
        y, z = int(arr[x]), int(inv[x])
        if y == x:
            raise InputDomainError(f"theta_{w} fixes point {tuple(X.point_of_index[x])}")
        taken = {colour.get(y), colour.get(z)}
        colour[x] = next(c for c in range(3) if c not in taken)
    pts = X.point_of_index
    return {pts[x]: c for x, c in colour.items()}


def coloring_is_valid(action: ThetaAction, w: FreeWord, colouring: dict) -> bool:
    s = theta(action, w)
    return all(colouring[q] != colouring[p] for p, q in s.pairs if p in colouring)


# ---------------------------------------------------------------- persistence


class Persistence(str, Enum):
    PERSISTENT = "PERSISTENT"
    FINITE = "FINITE"
    UNDECIDED = "UNDECIDED"


@dataclass
class PersistenceVerdict:
    word: FreeWord
    verdict: Persistence
    evidence: list
    horizon: int

    def to_dict(self) -> dict:
        return {"word": str(self.word), "verdict": self.verdict.value, "evidence": self.evidence, "horizon": self.horizon}


def _horizon(action, horizon):
    n = len(action.space)
    return n if horizon is None else min(int(horizon), n)


def _persistence_of_array(action, arr, horizon):
    H = _horizon(action, horizon)
    evidence = action.domain_sizes(arr)[:H]
    if H < MIN_HORIZON:
        return Persistence.UNDECIDED, evidence, H
    top = evidence[H // 2:]
    if all(top):
        return Persistence.PERSISTENT, evidence, H
    if not any(top):
        return Persistence.FINITE, evidence, H
    return Persistence.UNDECIDED, evidence, H


def classify_persistence(action: ThetaAction, w: FreeWord, horizon: int | None = None) -> PersistenceVerdict:
    """PERSISTENT: non-empty domain in every component of the top half of the
    first ``horizon`` components; FINITE: empty there; else UNDECIDED.
    Fewer than three components is always UNDECIDED."""
    v, ev, H = _persistence_of_array(action, action.array(w), horizon)
    return PersistenceVerdict(w, v, ev, H)


def phi(action: ThetaAction, w: FreeWord, horizon: int | None = None):
    """Label ``theta_w`` by ``w`` (persistent) or ZERO (finite support)."""
    v = classify_persistence(action, w, horizon)
    if v.verdict is Persistence.PERSISTENT:
        return w
    if v.verdict is Persistence.FINITE:
        return ZERO
    raise TruncationInsufficientError(f"persistence of theta_{w} undecided at horizon {v.horizon}: {v.evidence}")


def phi_element(action: ThetaAction, s, max_len: int, horizon: int | None = None):
    """Label an arbitrary element ``s`` by the unique persistent ``theta_g`` above it.

    ``s`` is compared with each ``theta_g``, ``|g| <= max_len``, on the top
    half of the truncation; finitely supported ``s`` maps to ZERO.
    """
    arr = action.from_translation(s) if isinstance(s, PartialTranslation) else s
    H = _horizon(action, horizon)
    if H < MIN_HORIZON:
        raise TruncationInsufficientError(f"horizon {H} is below {MIN_HORIZON}")
    top = action.component_mask(range(H // 2, H))
    s_top = np.where(top, arr, -1)
    if not np.any(s_top >= 0):
        return ZERO
    cands, table = _persistent_table(action, max_len, H)
    top_idx = np.nonzero(top)[0]
    s_loc = s_top[top_idx]
    dom = np.nonzero(s_loc >= 0)[0]
    hits = np.nonzero(np.all(table[:, dom] == s_loc[dom], axis=1))[0]
    found = [cands[h] for h in hits]
    if len(found) != 1:
        raise TruncationInsufficientError(f"{len(found)} persistent theta_g above the element (|g| <= {max_len})")
    return found[0]


def _persistent_table(action: ThetaAction, max_len: int, H: int):
    """Persistent words ``|g| <= max_len`` and their ``theta_g`` on the top-half points."""
    key = ("persistent", max_len, H)
    hit = action._tables.get(key)
    if hit is None:
        top_idx = np.nonzero(action.component_mask(range(H // 2, H)))[0]
        cands = [g for g in words_up_to(action.k, max_len)
                 if _persistence_of_array(action, action.array(g), H)[0] is Persistence.PERSISTENT]
        rows = [action.array(g)[top_idx] for g in cands]
        table = np.stack(rows) if rows else np.zeros((0, len(top_idx)), np.int32)
        with action._lock:
            hit = action._tables.setdefault(key, (cands, table))
    return hit


# ---------------------------------------------------------------- monoid structure


def girth_threshold(action: ThetaAction, L: int, horizon: int | None = None) -> int:
    """First component index from which every component (up to the horizon) has girth > L."""
    H = _horizon(action, horizon)
    t = H
    for i in range(H - 1, -1, -1):
        if action.girths[i] > L:
            t = i
        else:
            break
    return t


@dataclass
class StructureReport:
    threshold: int
    tail: list
    clauses: dict

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses.values())

    def to_dict(self) -> dict:
        return {"threshold": self.threshold, "tail": self.tail,
                "clauses": {k: c.to_dict() for k, c in self.clauses.items()}}


def check_monoid_structure(action: ThetaAction, L: int, horizon: int | None = None,
                           samples: int = 60, seed: int = 0) -> StructureReport:
    """Finite witnesses for the structure of the infinite-support quotient.

    Works on the tail of components with girth > L.  Words whose
    persistence verdict is FINITE are skipped; PERSISTENT and UNDECIDED
    words are both checked.  Clauses:

    1. no non-trivial ``theta_w`` is a non-empty idempotent on the tail;
    2. a non-empty product ``theta_{w1}...theta_{wm}`` (m <= 3) lies below
       ``theta_{w1...wm}`` and below no other non-finite ``theta_g``, ``|g| <= mL``;
    3. no non-trivial ``theta_w`` lies above a non-empty idempotent (has a
       fixed point) on the tail.
    """
    if L < 1:
        raise InputDomainError("L must be >= 1")
    H = _horizon(action, horizon)
    t = girth_threshold(action, L, H)
    tail = list(range(t, H))
    mask = action.component_mask(tail)
    tail_idx = np.nonzero(mask)[0]

    def nonfinite(w):
        return _persistence_of_array(action, action.array(w), H)[0] is not Persistence.FINITE

    words = [w for w in words_up_to(action.k, L) if len(w)]
    c1 = CheckResult("clause1_not_idempotent", True)
    c3 = CheckResult("clause3_zero_e_unitary", True)
    for w in words:
        if not nonfinite(w):
            continue
        a = action.array(w)[tail_idx]
        defined = a >= 0
        if not defined.any():
            continue
        c1.checked += 1
        c3.checked += 1
        moved = a[defined] != tail_idx[defined]
        if not moved.any():
            c1.ok = False
            c1.witnesses.append({"word": str(w), "domain": int(defined.sum())})
        if not moved.all():
            c3.ok = False
            x = int(tail_idx[defined][~moved][0])
            c3.witnesses.append({"word": str(w), "fixed_point": _pt(action, x)})

    c2 = CheckResult("clause2_unique_maximal", True, details={"samples": samples, "seed": seed})
    rng = np.random.default_rng(seed)
    cand_by_len = {}
    for _ in range(samples):
        m = int(rng.integers(1, 4))
        ws = [words[int(rng.integers(len(words)))] for _ in range(m)] if words else []
        if not ws:
            break
        s = action.array(ws[-1])
        for w in reversed(ws[:-1]):
            s = compose_arrays(action.array(w), s)
        s_tail = s[tail_idx]
        if not np.any(s_tail >= 0):
            continue
        c2.checked += 1
        prod = FreeWord.reduced([x for w in ws for x in w.letters])
        label = " * ".join(str(w) for w in ws)
        if arr_leq(np.where(mask, s, -1), action.array(prod)) is not None:
            c2.ok = False
            c2.witnesses.append({"product": label, "reduced": str(prod), "problem": "not below theta of reduced product"})
            continue
        if m * L not in cand_by_len:
            cands = [g for g in words_up_to(action.k, m * L) if nonfinite(g)]
            table = np.stack([action.array(g)[tail_idx] for g in cands]) if cands else np.zeros((0, len(tail_idx)), np.int32)
            cand_by_len[m * L] = (cands, table)
        cands, table = cand_by_len[m * L]
        dom = np.nonzero(s_tail >= 0)[0]
        hits = np.nonzero(np.all(table[:, dom] == s_tail[dom], axis=1))[0]
        above = [cands[h] for h in hits]
        if above != [prod]:
            c2.ok = False
            c2.witnesses.append({"product": label, "reduced": str(prod), "above": [str(g) for g in above[:5]]})
    return StructureReport(t, tail, {"clause1": c1, "clause2": c2, "clause3": c3})


def check_phi(action: ThetaAction, L: int, horizon: int | None = None, samples: int = 60, seed: int = 0) -> CheckResult:
    """Phi(theta_w) = w for persistent w, Phi(theta_g theta_h) in {gh, ZERO},
    and Phi(s) = e only for elements idempotent on the persistent part."""
    res = CheckResult("phi_labelling", True, details={"max_len": L})
    H = _horizon(action, horizon)
    words = list(words_up_to(action.k, L))
    persistent = []
    for w in words:
        v = classify_persistence(action, w, H)
        if v.verdict is Persistence.PERSISTENT:
            persistent.append(w)
            res.checked += 1
            if phi(action, w, H) != w:
                res.ok = False
                res.witnesses.append({"word": str(w), "problem": "phi(theta_w) != w"})
    res.details["persistent_words"] = len(persistent)
    if H < MIN_HORIZON:
        res.details["note"] = f"horizon {H} < {MIN_HORIZON}: no persistence verdicts"
        return res
    empty = np.full(action.space.point_count, -1, dtype=np.int32)
    res.checked += 1
    if phi_element(action, empty, 0, H) is not ZERO:
        res.ok = False
        res.witnesses.append({"problem": "phi(0) != ZERO"})
    top = action.component_mask(range(H // 2, H))
    rng = np.random.default_rng(seed)
    for _ in range(samples if persistent else 0):
        g = persistent[int(rng.integers(len(persistent)))]
        h = persistent[int(rng.integers(len(persistent)))]
        s = compose_arrays(action.array(g), action.array(h))
        try:
            val = phi_element(action, s, 2 * L, H)
        except TruncationInsufficientError as exc:
            res.ok = False
            res.witnesses.append({"g": str(g), "h": str(h), "problem": str(exc)})
            continue
        res.checked += 1
        if val is not ZERO and val != g * h:
            res.ok = False
            res.witnesses.append({"g": str(g), "h": str(h), "phi": str(val)})
        if val == IDENTITY:
            d = np.nonzero(top & (s >= 0))[0]
            if np.any(s[d] != d):
                res.ok = False
                res.witnesses.append({"g": str(g), "h": str(h), "problem": "phi = e on a non-idempotent"})
    return res
