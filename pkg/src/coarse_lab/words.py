"""Reduced words in the free group F_k.

A letter is ``(j, s)`` with generator index ``1 <= j <= k`` and sign ``s = +-1``.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import InputDomainError


def _check_letter(letter):
    j, s = letter
    if not isinstance(j, int) or j < 1 or s not in (1, -1):
        raise InputDomainError(f"bad letter {letter!r}")
    return (j, s)


def reduce_letters(letters: Sequence) -> tuple:
    out = []
    for letter in letters:
        j, s = _check_letter(letter)
        if out and out[-1] == (j, -s):
            out.pop()
        else:
            out.append((j, s))
    return tuple(out)


class FreeWord:
    """Immutable reduced word; construction rejects unreduced input."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Sequence = ()):
        letters = tuple(_check_letter(x) for x in letters)
        for a, b in zip(letters, letters[1:]):
            if a[0] == b[0] and a[1] == -b[1]:
                raise InputDomainError(f"word {format_letters(letters)} is not reduced")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_hash", hash(letters))

    def __setattr__(self, name, value):
        raise AttributeError("FreeWord is immutable")

    @classmethod
    def reduced(cls, letters: Sequence) -> "FreeWord":
        return cls(reduce_letters(letters))

    @classmethod
    def gen(cls, j: int, power: int = 1) -> "FreeWord":
        s = 1 if power >= 0 else -1
        return cls(((j, s),) * abs(power))

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """Parse ``"a1 a2^-1 a1^3"``; ``"e"`` or ``""`` is the identity."""
        letters = []
        for tok in text.split():
            if tok in ("e", "ε"):
                continue
            base, _, exp = tok.partition("^")
            if not base.startswith("a") or not base[1:].isdigit():
                raise InputDomainError(f"bad token {tok!r}")
            n = int(exp) if exp else 1
            letters += [(int(base[1:]), 1 if n > 0 else -1)] * abs(n)
        return cls.reduced(letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord.reduced(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((j, -s) for j, s in reversed(self.letters)))

    __invert__ = inverse

    def is_identity(self) -> bool:
        return not self.letters

    @property
    def rank(self) -> int:
        return max((j for j, _ in self.letters), default=0)

    def __repr__(self):
        return f"FreeWord({format_letters(self.letters)!r})"

    def __str__(self):
        return format_letters(self.letters)


IDENTITY = FreeWord()


def format_letters(letters) -> str:
    if not letters:
        return "e"
    parts = []
    run_j, run_n = None, 0
    for j, s in letters:
        if run_j == j and (run_n > 0) == (s > 0):
            run_n += s
            continue
        if run_j is not None:
            parts.append(f"a{run_j}" if run_n == 1 else f"a{run_j}^{run_n}")
        run_j, run_n = j, s
    parts.append(f"a{run_j}" if run_n == 1 else f"a{run_j}^{run_n}")
    return " ".join(parts)


def letters_of(k: int) -> list:
    """Letters of F_k in canonical order ``a1, a1^-1, a2, a2^-1, ...``."""
    return [(j, s) for j in range(1, k + 1) for s in (1, -1)]


def words_of_length(k: int, n: int) -> Iterator[FreeWord]:
    if n == 0:
        yield IDENTITY
        return
    alphabet = letters_of(k)

    def extend(prefix):
        if len(prefix) == n:
            yield FreeWord(prefix)
            return
        for x in alphabet:
            if prefix and prefix[-1] == (x[0], -x[1]):
                continue
            yield from extend(prefix + (x,))

    yield from extend(())


def words_up_to(k: int, max_len: int) -> Iterator[FreeWord]:
    """All reduced words of length ``<= max_len`` in shortlex order."""
    for n in range(max_len + 1):
        yield from words_of_length(k, n)


def count_reduced(k: int, n: int) -> int:
    return 1 if n == 0 else 2 * k * (2 * k - 1) ** (n - 1)
