"""
Covering the entourage at infinity
==================================

Pairs at distance at most R inside one component are reached by theta of a
word of length at most R, read off a geodesic. What remains is finite.
"""

from coarse_lab import ThetaAction, cycles_family, orient_labelling
from coarse_lab.cover import cover_at_infinity, entourage, orbit_pairs

X = cycles_family(range(5, 12))
action = ThetaAction(orient_labelling(X))
for R in (1, 2, 3):
    rep = cover_at_infinity(action, R)
    print(f"R={R}: {rep.verdict}, words {[str(w) for w in rep.words_used]}, "
          f"|Delta_R|={len(entourage(X, R))}, leftover {len(rep.exceptional_pairs)}")

# large R reaches across components; those pairs make up the finite leftover
rep = cover_at_infinity(action, 12)
print("R=12 leftover pairs:", len(rep.exceptional_pairs))

# words of length <= L reach exactly the L-ball in each component
print(len(orbit_pairs(action, 0, 2)), "pairs within distance 2 on C_5")
