"""
Spaces of graphs
================

A sequence of finite connected graphs glued into one metric space, with the
components pushed further and further apart.
"""

from coarse_lab import SpaceOfGraphs, cycles_family, diameter, distance, girth, sl2_family
from coarse_lab.graphs import Point, petersen_graph

# Cycles C_5 ... C_9. The gap between component i and j grows with both indices
# and with the largest diameter seen so far.
X = cycles_family(range(5, 10))
print("sizes   ", X.sizes)
print("spacing ", X.spacing)
print("d(C_5[0], C_5[2]) =", distance(X, Point(0, 0), Point(0, 2)))
print("d(C_5[0], C_6[0]) =", distance(X, Point(0, 0), Point(1, 0)))

# Cayley graphs of SL2(F_p) for the two standard unipotent generators
Y = sl2_family([3, 5, 7])
for G in Y.components:
    print(f"|V|={G.vertex_count:4d}  girth={girth(G)}  diameter={diameter(G)}")

# any connected graphs will do
Z = SpaceOfGraphs((petersen_graph(), petersen_graph()))
print("Petersen girth:", girth(Z.components[0]))
