"""Spin tomograms, operator symbols and their inversion.

Conventions used throughout the package:

* the dequantizer of one mode is the rotated projector ``u^+ |m><m| u``, which
  equals ``I/2 + m (sigma . n)`` with ``(sigma . n)[0, 1] = sin(theta) exp(-i psi)``;
* the quantizer is ``I/2 + 3 m (sigma . n)``;
* the measure on each mode is ``sum over m = +-1/2`` times ``dOmega / 4 pi``;
* a projection tuple is encoded as a basis index with ``m = +1/2`` as bit 0
  and ``m = -1/2`` as bit 1, mode 1 in the most significant bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np

from .linalg import as_matrix, batched_kron, kron_all
from .rotations import Direction, EulerAngles, SphereQuadrature, euler_rotation, sphere_quadrature

CONVENTION = "rotated-projector dequantizer, dOmega/4pi measure"
SPIN_PROJECTIONS = (0.5, -0.5)

TomoPoint = Sequence[tuple[float, Direction]]


@dataclass(frozen=True, eq=False)
class PointSet:
    """A batch of ``P`` tomographic points on ``N`` modes.

    ``m``, ``theta`` and ``psi`` have shape ``(P, N)``. Grids built by
    :func:`tomo_grid` also carry quadrature ``weights`` of shape ``(P,)``.
    """

    m: np.ndarray
    theta: np.ndarray
    psi: np.ndarray
    weights: np.ndarray | None = None
    degree: int | None = None

    @property
    def modes(self) -> int:
        return self.m.shape[1]

    def __len__(self) -> int:
        return self.m.shape[0]

    @property
    def vectors(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.stack([st * np.cos(self.psi), st * np.sin(self.psi), np.cos(self.theta)], axis=-1)

    def bits(self) -> np.ndarray:
        """Projection-tuple basis index of every point."""
        b = (self.m < 0).astype(int)
        powers = 2 ** np.arange(self.modes - 1, -1, -1)
        return b @ powers

    def point(self, k: int) -> list[tuple[float, Direction]]:
        return [
            (float(self.m[k, i]), Direction(self.theta[k, i], self.psi[k, i]))
            for i in range(self.modes)
        ]


def _check_m(m) -> None:
    if not np.all(np.isin(m, SPIN_PROJECTIONS)):
        raise ValueError("spin projections must be +1/2 or -1/2")


def as_points(point: Union[PointSet, TomoPoint]) -> PointSet:
    if isinstance(point, PointSet):
        return point
    pairs = list(point)
    if not pairs:
        raise ValueError("a tomographic point needs at least one mode")
    m = np.array([[float(p[0]) for p in pairs]])
    _check_m(m)
    theta = np.array([[p[1].theta for p in pairs]])
    psi = np.array([[p[1].psi for p in pairs]])
    return PointSet(m, theta, psi)


def grid_from_quadratures(quads: Sequence[SphereQuadrature]) -> PointSet:
    """Product grid over ``(m, node)`` for each mode; mode 1 varies slowest."""
    for q in quads:
        if q.degree < 2:
            raise ValueError(f"quadrature of degree {q.degree} cannot resolve symbols; need >= 2")
    per_mode = []
    for q in quads:
        m = np.repeat(SPIN_PROJECTIONS, len(q))
        per_mode.append((m, np.tile(q.theta, 2), np.tile(q.psi, 2), np.tile(q.weights, 2)))
    idx = np.array(list(itertools.product(*[range(len(pm[0])) for pm in per_mode])))
    cols = range(len(quads))
    m = np.stack([per_mode[i][0][idx[:, i]] for i in cols], axis=1)
    theta = np.stack([per_mode[i][1][idx[:, i]] for i in cols], axis=1)
    psi = np.stack([per_mode[i][2][idx[:, i]] for i in cols], axis=1)
    w = np.prod(np.stack([per_mode[i][3][idx[:, i]] for i in cols], axis=1), axis=1)
    degree = min(q.degree for q in quads)
    return PointSet(m, theta, psi, w, degree)


@lru_cache(maxsize=32)
def tomo_grid(n_modes: int, degree: int = 2) -> PointSet:
    """Standard grid: the same degree-``degree`` sphere rule on every mode."""
    q = sphere_quadrature(degree)
    return grid_from_quadratures([q] * n_modes)


def resolve_grid(quad, n_modes: int) -> PointSet:
    if isinstance(quad, PointSet):
        if quad.weights is None:
            raise ValueError("integration grid carries no weights")
        if quad.degree is not None and quad.degree < 2:
            raise ValueError("quadrature degree must be >= 2")
        if quad.modes != n_modes:
            raise ValueError(f"grid has {quad.modes} modes, symbol has {n_modes}")
        return quad
    if isinstance(quad, (int, np.integer)):
        return tomo_grid(n_modes, int(quad))
    if isinstance(quad, SphereQuadrature):
        return grid_from_quadratures([quad] * n_modes)
    quads = list(quad)
    if len(quads) != n_modes:
        raise ValueError(f"{len(quads)} quadratures supplied for {n_modes} modes")
    return grid_from_quadratures(quads)


def _sigma_n(theta, psi) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    psi = np.asarray(psi, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = s * np.exp(-1j * psi)
    out[..., 1, 0] = s * np.exp(1j * psi)
    out[..., 1, 1] = -c
    return out


def _single_stack(m, theta, psi, scale: float) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    return 0.5 * np.eye(2) + (scale * m)[..., None, None] * _sigma_n(theta, psi)


def dequantizer(m: float, dir: Direction) -> np.ndarray:
    _check_m(m)
    return _single_stack(m, dir.theta, dir.psi, 1.0)


def quantizer(m: float, dir: Direction) -> np.ndarray:
    _check_m(m)
    return _single_stack(m, dir.theta, dir.psi, 3.0)


def delta_kernel(p1: tuple[float, Direction], p2: tuple[float, Direction]) -> float:
    """``Tr D(p1) U(p2) = 1/2 + 6 m1 m2 (n1 . n2)``."""
    (m1, d1), (m2, d2) = p1, p2
    _check_m([m1, m2])
    return 0.5 + 6.0 * m1 * m2 * float(np.dot(d1.n, d2.n))


def _multi_stack(points: PointSet, scale: float) -> np.ndarray:
    out = _single_stack(points.m[:, 0], points.theta[:, 0], points.psi[:, 0], scale)
    for i in range(1, points.modes):
        out = batched_kron(out, _single_stack(points.m[:, i], points.theta[:, i], points.psi[:, i], scale))
    return out


def dequantizer_stack(points: PointSet) -> np.ndarray:
    """Multi-mode dequantizers of every point, shape ``(P, 2^N, 2^N)``."""
    return _multi_stack(points, 1.0)


def quantizer_stack(points: PointSet) -> np.ndarray:
    return _multi_stack(points, 3.0)


def multi_dequantizer(point: TomoPoint) -> np.ndarray:
    return kron_all(dequantizer(m, d) for m, d in point)


def multi_quantizer(point: TomoPoint) -> np.ndarray:
    return kron_all(quantizer(m, d) for m, d in point)


def check_density_matrix(rho, tol: float = 1e-10) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho).real:.3g}, expected 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def _n_modes_of(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def tomogram(rho, angles: Sequence[EulerAngles], tol: float = 1e-10) -> np.ndarray:
    """Joint distribution of the ``N`` spin projections for rotations ``angles``.

    Entry ``b`` is the diagonal element ``(u rho u^+)_{bb}`` with
    ``u = u_1 x ... x u_N``; ``b`` encodes the projection tuple.
    """
    rho = check_density_matrix(rho, tol)
    angles = list(angles)
    if 2 ** len(angles) != rho.shape[0]:
        raise ValueError(f"{len(angles)} angle triples do not match a {rho.shape[0]}-dim state")
    u = kron_all(euler_rotation(a) for a in angles)
    return np.real(np.einsum("ij,jk,ik->i", u, rho, u.conj()))


def tomogram_via_dequantizer(rho, angles: Sequence[EulerAngles], tol: float = 1e-10) -> np.ndarray:
    """Same distribution as :func:`tomogram`, computed as ``Tr(rho U(m, n))``."""
    rho = check_density_matrix(rho, tol)
    dirs = [a.direction for a in angles]
    n = len(dirs)
    if 2**n != rho.shape[0]:
        raise ValueError(f"{n} angle triples do not match a {rho.shape[0]}-dim state")
    probs = np.empty(2**n)
    for b, ms in enumerate(itertools.product(SPIN_PROJECTIONS, repeat=n)):
        probs[b] = np.real(np.trace(rho @ multi_dequantizer(list(zip(ms, dirs)))))
    return probs


def symbol_values(a, points: Union[PointSet, TomoPoint]) -> np.ndarray:
    """``Tr(A U(x))`` at every point of ``points``."""
    a = as_matrix(a)
    pts = as_points(points)
    if a.shape != (2**pts.modes, 2**pts.modes):
        raise ValueError(f"operator of shape {a.shape} does not act on {pts.modes} modes")
    return np.einsum("ij,pji->p", a, dequantizer_stack(pts))


def symbol(a, point: TomoPoint) -> complex:
    return complex(symbol_values(a, point)[0])


@dataclass(frozen=True, eq=False)
class OperatorSymbol:
    """A function on ``N``-mode tomographic points.

    ``fn`` maps a :class:`PointSet` to an array of ``P`` complex values.
    Calling with a single point (a sequence of ``(m, Direction)`` pairs)
    returns a scalar.
    """

    modes: int
    fn: Callable[[PointSet], np.ndarray]
    label: str = ""

    def values(self, points: PointSet) -> np.ndarray:
        if points.modes != self.modes:
            raise ValueError(f"symbol on {self.modes} modes evaluated at {points.modes}-mode points")
        return np.asarray(self.fn(points), dtype=complex)

    def __call__(self, point):
        if isinstance(point, PointSet):
            return self.values(point)
        return complex(self.values(as_points(point))[0])

    def _combine(self, other, op, label):
        if not isinstance(other, OperatorSymbol):
            return NotImplemented
        if other.modes != self.modes:
            raise ValueError("cannot combine symbols on different numbers of modes")
        return OperatorSymbol(self.modes, lambda p: op(self.values(p), other.values(p)), label)

    def __add__(self, other):
        return self._combine(other, np.add, f"({self.label} + {other.label})")

    def __sub__(self, other):
        return self._combine(other, np.subtract, f"({self.label} - {other.label})")

    def __rmul__(self, c):
        return OperatorSymbol(self.modes, lambda p: c * self.values(p), f"{c}*{self.label}")

    def conj(self) -> "OperatorSymbol":
        return OperatorSymbol(self.modes, lambda p: np.conj(self.values(p)), f"conj({self.label})")


def symbol_of(a, label: str = "") -> OperatorSymbol:
    """Matrix-derived symbol of operator ``a`` as a callable."""
    a = as_matrix(a)
    return OperatorSymbol(_n_modes_of(a.shape[0]), lambda p: symbol_values(a, p), label)


def tabulated(points: PointSet, values, label: str = "") -> OperatorSymbol:
    """Symbol known only on ``points``; evaluating it elsewhere is an error."""
    values = np.asarray(values, dtype=complex)

    def fn(p: PointSet) -> np.ndarray:
        if p is points:
            return values
        if (
            p.m.shape == points.m.shape
            and np.array_equal(p.m, points.m)
            and np.allclose(p.theta, points.theta, atol=1e-12)
            and np.allclose(p.psi, points.psi, atol=1e-12)
        ):
            return values
        raise ValueError("tabulated symbol can only be evaluated on its own grid")

    return OperatorSymbol(points.modes, fn, label)


def reconstruct(f: OperatorSymbol, quad=2) -> np.ndarray:
    """Recover the operator from its symbol: ``sum_x w(x) f(x) D(x)``.

    ``quad`` is a :class:`SphereQuadrature` shared by all modes, a list of
    them (one per mode), an exactness degree, or a weighted :class:`PointSet`.
    """
    grid = resolve_grid(quad, f.modes)
    vals = f.values(grid) * grid.weights
    return np.tensordot(vals, quantizer_stack(grid), axes=(0, 0))


def reproduce(f: OperatorSymbol, point: TomoPoint, quad=2) -> complex:
    """Integrate ``f`` against ``Tr D(x) U(point)`` over ``x`` (single mode)."""
    if f.modes != 1:
        raise ValueError("reproduce is defined for single-mode symbols")
    grid = resolve_grid(quad, 1)
    (m2, d2), = point
    n1 = grid.vectors[:, 0, :]
    kern = 0.5 + 6.0 * grid.m[:, 0] * m2 * (n1 @ np.asarray(d2.n))
    return complex(np.sum(grid.weights * f.values(grid) * kern))
