"""
Fermion operators as tensor strings
===================================

Build the N-mode creation and annihilation matrices, check the canonical
anticommutation relations, and watch Pauli exclusion and exchange
antisymmetry fall out of the matrices.
"""

import numpy as np

from fermitomo import build_algebra, fock_state, vacuum
from fermitomo.jordan_wigner import anticommutation_residuals

###############################################################################
# Two modes: a_1 = 1 x sigma_+, a_2 = sigma_+ x sigma_z
alg = build_algebra(2)
print("a_1 =\n", alg.a(1).real.astype(int))
print("a_2 =\n", alg.a(2).real.astype(int))

###############################################################################
# The relations hold exactly for every pair of modes.
for n in range(1, 7):
    worst = max(anticommutation_residuals(build_algebra(n)).values())
    print(f"N={n}: worst anticommutator residual {worst:.1e}")

###############################################################################
# The vacuum is the all-empty product state and every a_j kills it.
vac = vacuum(3)
alg3 = build_algebra(3)
print("vacuum(3) =", vac.real.astype(int))
print("|a_j vac| =", [float(np.linalg.norm(alg3.a(j) @ vac)) for j in (1, 2, 3)])

###############################################################################
# Exchanging two creators flips the sign; repeating one gives zero.
s12 = fock_state(alg3, [1, 3])
s21 = fock_state(alg3, [3, 1])
print("a1+ a3+ vac + a3+ a1+ vac == 0:", not np.any(s12 + s21))
print("a2+ a2+ vac == 0:", not np.any(fock_state(alg3, [2, 2])))
