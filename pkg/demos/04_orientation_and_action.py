"""
Orienting a space and the free group action
===========================================

Edges are split into k classes (2k bounds the degree), each class is oriented
so every vertex has at most one outgoing and one incoming edge. Generator a_j
then follows the arrows of class j, giving a partial action of the free group.
"""

from coarse_lab import ThetaAction, orient_labelling, sl2_family, theta, validate_labelling
from coarse_lab.action import check_dual_prehom, check_freeness, fixed_points, three_coloring
from coarse_lab.words import FreeWord

X = sl2_family([3, 5])
L = orient_labelling(X)
print("k =", L.k, " validation:", validate_labelling(L).verdict)

action = ThetaAction(L)
w = FreeWord.parse("a1 a2^-1 a1")
print(w, "has domain sizes", action.domain_sizes(action.array(w)))

# theta(g) theta(h) <= theta(gh)
print(check_dual_prehom(action, 2).verdict)

# words shorter than the girth of a component fix nothing there
print(check_freeness(action, 4).verdict)
print("fixed points of a1^3 on the p=3 graph:", len(fixed_points(action, FreeWord.gen(1, 3), 0)))

# without fixed points theta_w can be 3-coloured, each class moved off itself
colours = three_coloring(action, FreeWord.gen(2), 1)
print("colours used:", sorted(set(colours.values())))
print("a1 a2 sends (1, 0) to", theta(action, FreeWord.parse("a1 a2"))(next(iter(X.points(1)))))
