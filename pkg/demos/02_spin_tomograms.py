"""
Spin tomograms
==============

A tomogram is the joint distribution of spin projections measured along
rotated axes. For any density matrix it is a proper probability
distribution, and it does not depend on the first Euler angle.
"""

import math

import numpy as np

from fermitomo import EulerAngles, density_matrix, tomogram, vacuum
from fermitomo.sampling import random_angles, random_density_matrix, rng_from_seed

rng = rng_from_seed(1)

###############################################################################
# Vacuum of two modes: each mode contributes cos^2(theta/2) or sin^2(theta/2).
angles = [EulerAngles(0.0, 0.7, 0.3), EulerAngles(0.0, 1.9, 2.0)]
p = tomogram(density_matrix(vacuum(2)), angles)
for bits, prob in zip(["++", "+-", "-+", "--"], p):
    print(f"m = {bits}: {prob:.6f}")
c1, c2 = math.cos(0.35) ** 2, math.cos(0.95) ** 2
print("closed form for ++:", c1 * c2)

###############################################################################
# Random mixed states on three modes give nonnegative, normalized tomograms.
rho = random_density_matrix(8, rng)
for _ in range(3):
    q = tomogram(rho, random_angles(3, rng))
    print(f"min {q.min():.3e}  sum {q.sum():.15f}")

###############################################################################
# Changing phi leaves the distribution untouched.
a = random_angles(3, rng)
b = [EulerAngles(phi, x.theta, x.psi) for phi, x in zip(rng.uniform(0, 6, 3), a)]
print("phi-independence:", np.allclose(tomogram(rho, a), tomogram(rho, b), atol=1e-13))
