"""Matrix realization of N-mode fermionic creation and annihilation operators.

Annihilator ``a_i`` is the tensor string

    1 x ... x 1 x sigma_+ x sigma_z x ... x sigma_z

with ``sigma_+`` in tensor slot ``N - i + 1`` (slots counted from the left,
1-based). Slot ``k`` of basis index ``b`` is bit ``N - k`` of ``b``, so slot 1
is the most significant bit. Bit value 0 is the empty (spin-up) level.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import IDENTITY, SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z, dagger, kron_all

MAX_MODES = 10


def _check_modes(n_modes: int, max_modes: int = MAX_MODES) -> int:
    n = int(n_modes)
    if n != n_modes or not 1 <= n <= max_modes:
        raise ValueError(f"number of modes must be an integer in [1, {max_modes}], got {n_modes!r}")
    return n


def mode_factors(n_modes: int, j: int, ladder: np.ndarray = SIGMA_PLUS) -> list[np.ndarray]:
    """The per-slot 2x2 factors of the string for mode ``j`` (1-based)."""
    if not 1 <= j <= n_modes:
        raise ValueError(f"mode index {j} outside 1..{n_modes}")
    slot = n_modes - j + 1
    return [IDENTITY] * (slot - 1) + [ladder] + [SIGMA_Z] * (n_modes - slot)


@dataclass(frozen=True, eq=False)
class FermionAlgebra:
    n_modes: int
    annihilators: tuple

    @property
    def dim(self) -> int:
        return 2**self.n_modes

    @cached_property
    def creators(self) -> tuple:
        return tuple(dagger(a) for a in self.annihilators)

    def a(self, j: int) -> np.ndarray:
        """Annihilator for mode ``j`` (1-based)."""
        return self.annihilators[self._index(j)]

    def adag(self, j: int) -> np.ndarray:
        return self.creators[self._index(j)]

    def number(self, j: int) -> np.ndarray:
        return self.adag(j) @ self.a(j)

    def _index(self, j: int) -> int:
        if not 1 <= j <= self.n_modes:
            raise ValueError(f"mode index {j} outside 1..{self.n_modes}")
        return j - 1


def build_algebra(n_modes: int, max_modes: int = MAX_MODES) -> FermionAlgebra:
    n = _check_modes(n_modes, max_modes)
    ops = tuple(kron_all(mode_factors(n, j)) for j in range(1, n + 1))
    for op in ops:
        op.setflags(write=False)
    return FermionAlgebra(n, ops)


def creation_string(n_modes: int, j: int) -> np.ndarray:
    """``a_j^+`` built directly with ``sigma_-`` in place of ``sigma_+``."""
    return kron_all(mode_factors(n_modes, j, SIGMA_MINUS))


def vacuum(n_modes: int, max_modes: int = MAX_MODES) -> np.ndarray:
    n = _check_modes(n_modes, max_modes)
    up = np.array([[1.0], [0.0]], dtype=complex)
    return kron_all([up] * n).ravel()


def fock_state(algebra: FermionAlgebra, ordered_modes) -> np.ndarray:
    """``a_{i1}^+ a_{i2}^+ ... |vac>`` for ``ordered_modes = [i1, i2, ...]``.

    Creators act right to left and the result is not renormalized; a repeated
    mode gives the zero vector.
    """
    state = vacuum(algebra.n_modes)
    for j in reversed(list(ordered_modes)):
        state = algebra.adag(j) @ state
    return state


def density_matrix(state) -> np.ndarray:
    state = np.asarray(state, dtype=complex).ravel()
    return np.outer(state, state.conj())


def anticommutation_residuals(algebra: FermionAlgebra) -> dict[str, float]:
    """Largest Frobenius residual of each family of canonical relations."""
    eye = np.eye(algebra.dim)
    worst = {"{a_i,a_j}": 0.0, "{a_i+,a_j+}": 0.0, "{a_i,a_j+}-delta_ij": 0.0}
    n = algebra.n_modes
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ai, aj = algebra.a(i), algebra.a(j)
            ci, cj = algebra.adag(i), algebra.adag(j)
            r1 = np.linalg.norm(ai @ aj + aj @ ai)
            r2 = np.linalg.norm(ci @ cj + cj @ ci)
            r3 = np.linalg.norm(ai @ cj + cj @ ai - (i == j) * eye)
            worst["{a_i,a_j}"] = max(worst["{a_i,a_j}"], float(r1))
            worst["{a_i+,a_j+}"] = max(worst["{a_i+,a_j+}"], float(r2))
            worst["{a_i,a_j+}-delta_ij"] = max(worst["{a_i,a_j+}-delta_ij"], float(r3))
    return worst
