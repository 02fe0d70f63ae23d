"""
Partial translations
====================

Partial bijections that move points a bounded distance form an inverse
monoid under composition.
"""

from coarse_lab import PartialTranslation, compose, cycles_family, invert, is_idempotent, leq, translation_length
from coarse_lab.graphs import Point

X = cycles_family([5, 6])


def rotate(c, shift, vertices):
    n = X.sizes[c]
    return PartialTranslation(X, {Point(c, v): Point(c, (v + shift) % n) for v in vertices})


s = rotate(0, 1, range(5))
t = rotate(1, -2, [0, 1, 2])
st = compose(s, t)  # t first, then s
print("s t is empty across components:", len(st) == 0)

# s s* s = s and s s* is the identity on the domain of s
e = compose(s, invert(s))
print(compose(e, s) == s, is_idempotent(e), sorted(e.domain) == sorted(s.domain))

# restriction gives the natural order
r = t.restrict([Point(1, 0)])
print("restriction below:", leq(r, t), " above:", leq(t, r))
print("translation lengths:", translation_length(s), translation_length(t))
