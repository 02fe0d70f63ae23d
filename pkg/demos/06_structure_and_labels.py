"""
Persistence and the labelling map
=================================

Modulo finitely supported elements, theta_w is remembered only when its
domain survives in every large component. Those elements are labelled by
their word; everything finite goes to zero.
"""

from coarse_lab import ZERO, ThetaAction, orient_labelling, sl2_family
from coarse_lab.action import (
    check_monoid_structure,
    check_phi,
    classify_persistence,
    compose_arrays,
    phi,
    phi_element,
)
from coarse_lab.words import FreeWord

action = ThetaAction(orient_labelling(sl2_family([3, 5, 7])))
w = FreeWord.parse("a1 a2 a1^-1")
print(classify_persistence(action, w).verdict.value, "->", phi(action, w))

# theta_w theta_w^-1 is an idempotent and is labelled by the empty word
e = compose_arrays(action.array(w), action.array(w.inverse()))
print("idempotent labelled by", repr(str(phi_element(action, e, 3))))
print("empty element labelled", phi_element(action, e * 0 - 1, 3) is ZERO)

rep = check_monoid_structure(action, 3)
print("structure:", {k: c.verdict for k, c in rep.clauses.items()}, "on tail", rep.tail)
print("labelling:", check_phi(action, 3).verdict)
