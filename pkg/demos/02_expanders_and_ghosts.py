"""
Spectral gaps, expanders and ghost projections
==============================================

Cycles have gaps shrinking like 1/n^2, the SL2(F_p) Cayley graphs keep a
uniform gap. The kernel projection of an expander is a ghost; its Wang
doubling is not.
"""

import numpy as np

from coarse_lab import certify_expander, classify_ghost, ghost_projection, wang_projection, wang_space
from coarse_lab.generators import cycles_family, sl2_family
from coarse_lab.spectral import gaps

cycles = cycles_family(range(3, 16))
closed_form = [(1 - np.cos(2 * np.pi / n)) / 2 for n in cycles.sizes]
print("largest deviation from closed form:", max(abs(a - b) for a, b in zip(gaps(cycles), closed_form)))

cert = certify_expander(cycles, 0.05)
print("cycles at c_min=0.05:", cert.verdict.value, "- first failure is C_%d" % cycles.sizes[cert.witness])

sl2 = sl2_family([5, 7, 11])
print("SL2 gaps:", [round(g, 6) for g in gaps(sl2)])
print("SL2 at c_min=0.04:", certify_expander(sl2, 0.04).verdict.value)

# p is ghost: only blocks with |X_i| <= 1/eps have an entry >= eps
p = ghost_projection(sl2)
for eps in (0.5, 0.05, 0.001):
    rep = classify_ghost(p, eps)
    print(f"p, eps={eps}: {rep.verdict.value}, offending {rep.offending_blocks}")

# q on the Wang doubling: column 1 repeats the constant 1/|X_1| forever
Y = wang_space(sl2, 3)
rep = classify_ghost(wang_projection(Y), 1 / sl2.sizes[0])
print("q:", rep.verdict.value, rep.witness)
