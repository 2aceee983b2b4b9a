"""
Composing symbols with the star product
=======================================

The symbol of a product AB is obtained from the symbols of A and B alone,
integrated against the kernel Tr D(y) D(z) U(x). The product is
associative but not commutative.
"""

import numpy as np

from fermitomo import build_algebra, direction, kernel_closed_form, star, star_kernel, symbol_of, tomo_grid
from fermitomo.linalg import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z

###############################################################################
# The single-mode kernel from the trace and from its polynomial form.
p = [(0.5, direction(0.4, 1.0)), (-0.5, direction(1.7, 2.5)), (0.5, direction(2.2, 4.0))]
print("trace      :", star_kernel([p[0]], [p[1]], [p[2]]))
print("closed form:", kernel_closed_form(*p))

###############################################################################
# sigma_+ * sigma_- minus sigma_- * sigma_+ is sigma_z.
g = tomo_grid(1, 2)
fp, fm = symbol_of(SIGMA_PLUS), symbol_of(SIGMA_MINUS)
comm = star(fp, fm)(g) - star(fm, fp)(g)
print("commutator vs sigma_z symbol:", np.abs(comm - symbol_of(SIGMA_Z)(g)).max())

###############################################################################
# The anticommutator of a_1 and a_1^+ is the unit symbol on two modes.
alg = build_algebra(2)
g2 = tomo_grid(2, 2)
fa, fad = symbol_of(alg.a(1)), symbol_of(alg.adag(1))
anti = star(fa, fad)(g2) + star(fad, fa)(g2)
print("{a1, a1+} symbol - 1:", np.abs(anti - 1).max())
