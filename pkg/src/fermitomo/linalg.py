"""Dense complex matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the functions
here add the shape checks the rest of the package relies on and a small
JSON codec used by the command line tool.
"""

from __future__ import annotations

from functools import reduce
from typing import Any, Iterable

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def as_matrix(a: Any) -> np.ndarray:
    """Coerce ``a`` to a 2-d complex array, rejecting anything else."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Iterable) -> np.ndarray:
    """Kronecker product of ``factors`` left to right (slot 1 outermost)."""
    factors = [as_matrix(f) for f in factors]
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    return reduce(np.kron, factors)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


def anticommutator(a, b) -> np.ndarray:
    """Return ``ab + ba`` for square matrices of equal size."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"anticommutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b + b @ a


def batched_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise Kronecker product of two stacks ``(P, p, p)`` and ``(P, q, q)``."""
    p, r, c = a.shape
    _, s, t = b.shape
    return np.einsum("nij,nkl->nikjl", a, b).reshape(p, r * s, c * t)


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def matrix_to_json(a) -> dict:
    """Row-major ``{"rows", "cols", "re", "im"}`` encoding."""
    a = as_matrix(a)
    flat = a.ravel(order="C")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * len(re)), dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from None
    if rows <= 0 or cols <= 0 or re.size != rows * cols or im.size != rows * cols:
        raise ValueError(f"matrix JSON declares {rows}x{cols} but carries {re.size}/{im.size} entries")
    return (re + 1j * im).reshape(rows, cols)
