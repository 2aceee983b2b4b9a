"""
Operator symbols and their inversion
====================================

Every operator maps to a function on (spin projection, direction) tuples.
The fermion ladder operators have closed-form symbols, and a six-node
sphere rule per mode recovers the matrix exactly.
"""

import numpy as np

from fermitomo import build_algebra, fermi_symbol, reconstruct, symbol_of, tomo_grid

N = 3
alg = build_algebra(N)
grid = tomo_grid(N, 2)
print(f"{N}-mode grid: {len(grid)} points")

###############################################################################
# Closed-form symbols agree with the trace definition on the whole grid.
for j in range(1, N + 1):
    dev = np.abs(fermi_symbol(N, j)(grid) - symbol_of(alg.a(j))(grid)).max()
    print(f"a_{j}: closed form vs matrix symbol, max deviation {dev:.1e}")

###############################################################################
# Reconstruct a_2 from its closed-form symbol.
back = reconstruct(fermi_symbol(N, 2), grid)
print("reconstruction error:", np.abs(back - alg.a(2)).max())

###############################################################################
# Any operator survives the round trip.
rng = np.random.default_rng(0)
a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
print("random 8x8 round trip error:", np.abs(reconstruct(symbol_of(a), grid) - a).max())
