"""Seeded random inputs for property checks."""

from __future__ import annotations

import math

import numpy as np

from .rotations import EulerAngles


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def random_operator(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """``G G^+ / Tr(G G^+)`` for a complex Gaussian ``G``."""
    g = random_operator(dim, rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_angles(n_modes: int, rng: np.random.Generator) -> list[EulerAngles]:
    return [
        EulerAngles(rng.uniform(0, 2 * math.pi), math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi))
        for _ in range(n_modes)
    ]
