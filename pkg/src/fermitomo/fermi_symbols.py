"""Closed-form tomographic symbols of fermion operators and of the vacuum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jordan_wigner import build_algebra, density_matrix, fock_state
from .tomography import OperatorSymbol, PointSet, as_points, symbol_values, tomo_grid

KINDS = ("plus", "minus", "z", "one")


def _omega_values(kind: str, m, theta, psi) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    sign = np.where(m > 0, 1.0, -1.0)
    if kind == "one":
        return np.ones_like(m, dtype=complex)
    if kind == "z":
        return (sign * np.cos(theta)).astype(complex)
    if kind == "plus":
        return 0.5 * sign * np.sin(theta) * np.exp(1j * np.asarray(psi))
    if kind == "minus":
        return 0.5 * sign * np.sin(theta) * np.exp(-1j * np.asarray(psi))
    raise ValueError(f"unknown symbol kind {kind!r}; expected one of {KINDS}")


def omega(kind: str, m: float, dir) -> complex:
    """Symbol of a single-slot factor: ``one``, ``z``, ``plus`` or ``minus``."""
    return complex(_omega_values(kind, m, dir.theta, dir.psi))


@dataclass(frozen=True)
class ClosedFormSymbol:
    """Product of per-slot closed forms, ``kinds[k]`` acting on slot ``k + 1``."""

    kinds: tuple

    def __post_init__(self):
        for k in self.kinds:
            if k not in KINDS:
                raise ValueError(f"unknown symbol kind {k!r}")

    @property
    def modes(self) -> int:
        return len(self.kinds)

    def values(self, points: PointSet) -> np.ndarray:
        out = np.ones(len(points), dtype=complex)
        for k, kind in enumerate(self.kinds):
            out *= _omega_values(kind, points.m[:, k], points.theta[:, k], points.psi[:, k])
        return out

    def as_symbol(self, label: str = "") -> OperatorSymbol:
        return OperatorSymbol(self.modes, self.values, label or "x".join(self.kinds))


def fermi_kinds(n_modes: int, j: int, creation: bool = False) -> tuple:
    """Slot kinds for ``a_j`` (or ``a_j^+``): ``one`` before slot ``N-j+1``, ``z`` after."""
    if not 1 <= j <= n_modes:
        raise ValueError(f"mode index {j} outside 1..{n_modes}")
    slot = n_modes - j + 1
    ladder = "minus" if creation else "plus"
    return ("one",) * (slot - 1) + (ladder,) + ("z",) * (n_modes - slot)


def fermi_symbol(n_modes: int, j: int, creation: bool = False) -> OperatorSymbol:
    label = f"a{j}+" if creation else f"a{j}"
    return ClosedFormSymbol(fermi_kinds(n_modes, j, creation)).as_symbol(label)


def fermi_operator_symbol(n_modes: int, j: int, kind: str, point) -> complex:
    """Closed-form symbol of ``a_j`` (``kind="annihilation"``) or ``a_j^+`` at one point."""
    if kind not in ("annihilation", "creation"):
        raise ValueError(f"kind must be 'annihilation' or 'creation', got {kind!r}")
    pts = as_points(point)
    if pts.modes != n_modes:
        raise ValueError(f"point has {pts.modes} modes, expected {n_modes}")
    return complex(fermi_symbol(n_modes, j, kind == "creation").values(pts)[0])


def vacuum_tomogram_values(points: PointSet) -> np.ndarray:
    half = 0.5 * points.theta
    per_mode = np.where(points.m > 0, np.cos(half) ** 2, np.sin(half) ** 2)
    return np.prod(per_mode, axis=1)


def vacuum_tomogram(n_modes: int, point) -> float:
    pts = as_points(point)
    if pts.modes != n_modes:
        raise ValueError(f"point has {pts.modes} modes, expected {n_modes}")
    return float(vacuum_tomogram_values(pts)[0])


@dataclass(frozen=True)
class AntisymmetryReport:
    n_modes: int
    i: int
    j: int
    state_sign_residual: float  # |a_i+ a_j+ vac + a_j+ a_i+ vac|
    max_deviation: float  # tomogram difference between the two orderings
    pauli_zero: bool  # a_i+ a_i+ vac is the zero vector
    points: int


def antisymmetry_check(n_modes: int, i: int, j: int, grid: PointSet | None = None) -> AntisymmetryReport:
    """Compare tomograms of ``a_i^+ a_j^+ |vac>`` and ``a_j^+ a_i^+ |vac>``.

    The two states differ by a sign only, so their tomograms coincide.
    Also confirms that ``a_i^+ a_i^+ |vac>`` vanishes.
    """
    if i == j:
        raise ValueError("antisymmetry check needs two distinct modes")
    alg = build_algebra(n_modes)
    grid = tomo_grid(n_modes, 2) if grid is None else grid
    psi_ij = fock_state(alg, [i, j])
    psi_ji = fock_state(alg, [j, i])
    w_ij = symbol_values(density_matrix(psi_ij), grid).real
    w_ji = symbol_values(density_matrix(psi_ji), grid).real
    doubled = fock_state(alg, [i, i])
    return AntisymmetryReport(
        n_modes=n_modes,
        i=i,
        j=j,
        state_sign_residual=float(np.linalg.norm(psi_ij + psi_ji)),
        max_deviation=float(np.max(np.abs(w_ij - w_ji))),
        pauli_zero=bool(not np.any(doubled)),
        points=len(grid),
    )
