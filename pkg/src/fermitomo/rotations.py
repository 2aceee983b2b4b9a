"""SU(2) rotations, sphere directions and product quadrature on the sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EulerAngles:
    """Euler angles ``(phi, theta, psi)`` in radians.

    ``phi`` and ``psi`` are wrapped into ``[0, 2*pi)``; ``theta`` must lie
    in ``[0, pi]``.
    """

    phi: float
    theta: float
    psi: float

    def __post_init__(self):
        _check_polar(self.theta)
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        object.__setattr__(self, "psi", float(self.psi) % TWO_PI)
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def direction(self) -> "Direction":
        return Direction(self.theta, self.psi)


@dataclass(frozen=True)
class Direction:
    """Point on the unit sphere with polar angle ``theta`` and azimuth ``psi``."""

    theta: float
    psi: float
    n: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_polar(self.theta)
        theta = float(self.theta)
        psi = float(self.psi) % TWO_PI
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "psi", psi)
        st = math.sin(theta)
        object.__setattr__(
            self, "n", (st * math.cos(psi), st * math.sin(psi), math.cos(theta))
        )


def _check_polar(theta: float) -> None:
    if not (0.0 <= float(theta) <= math.pi):
        raise ValueError(f"polar angle must lie in [0, pi], got {theta!r}")


def direction(theta: float, psi: float) -> Direction:
    return Direction(theta, psi)


def unit_vectors(theta, psi) -> np.ndarray:
    """Cartesian unit vectors for broadcastable angle arrays; last axis is xyz."""
    theta = np.asarray(theta, dtype=float)
    psi = np.asarray(psi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(psi), st * np.sin(psi), np.cos(theta)], axis=-1)


def euler_rotation(angles: EulerAngles) -> np.ndarray:
    """The 2x2 spinor rotation for Euler angles ``(phi, theta, psi)``.

    Rows are indexed by the rotated spin projection, ``+1/2`` first.
    """
    phi, theta, psi = angles.phi, angles.theta, angles.psi
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c * np.exp(0.5j * (phi + psi)), s * np.exp(0.5j * (phi - psi))],
            [-s * np.exp(-0.5j * (phi - psi)), c * np.exp(-0.5j * (phi + psi))],
        ]
    )


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Nodes and weights for the normalized measure ``dOmega / 4 pi``.

    Gauss-Legendre nodes in ``cos(theta)`` crossed with a uniform azimuthal
    grid. ``theta``, ``psi`` and ``weights`` are flat arrays of equal length.
    """

    degree: int
    theta: np.ndarray
    psi: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return self.weights.size

    @property
    def nodes(self) -> list[Direction]:
        return [Direction(t, p) for t, p in zip(self.theta, self.psi)]

    @property
    def vectors(self) -> np.ndarray:
        return unit_vectors(self.theta, self.psi)

    def integrate(self, values) -> complex:
        """Weighted sum of ``values`` sampled at the nodes, in node order."""
        values = np.asarray(values)
        if values.shape[0] != len(self):
            raise ValueError(f"expected {len(self)} samples, got {values.shape[0]}")
        return np.tensordot(self.weights, values, axes=(0, 0))


def sphere_quadrature(exactness_degree: int) -> SphereQuadrature:
    """Product rule exact for every polynomial in ``n`` of total degree ``<= exactness_degree``.

    ``ceil((L+1)/2)`` Gauss-Legendre nodes in ``cos(theta)`` integrate the polar
    part exactly; ``L+1`` equally spaced azimuths annihilate every Fourier mode
    ``exp(i k psi)`` with ``0 < |k| <= L``.
    """
    degree = int(exactness_degree)
    if degree < 2:
        raise ValueError(f"exactness degree must be >= 2, got {exactness_degree}")
    n_polar = (degree + 2) // 2
    n_azimuth = degree + 1
    x, w = np.polynomial.legendre.leggauss(n_polar)
    theta = np.arccos(x)
    psi = TWO_PI * np.arange(n_azimuth) / n_azimuth
    tt, pp = np.meshgrid(theta, psi, indexing="ij")
    weights = np.repeat(w / 2.0, n_azimuth) / n_azimuth
    return SphereQuadrature(degree, tt.ravel(), pp.ravel(), weights)
