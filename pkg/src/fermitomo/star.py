"""Tomographic star-product of operator symbols.

The kernel ``K(y, z, x) = Tr D(y) D(z) U(x)`` is always evaluated from the
trace of quantizer and dequantizer matrices. For one mode it reduces to

    1/4 + 9 m1 m2 (n1.n2) + 3 m1 m3 (n1.n3) + 3 m2 m3 (n2.n3)
        + 18 i m1 m2 m3 n1.(n2 x n3)

which :func:`kernel_closed_form` provides for cross-checking.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .tomography import (
    OperatorSymbol,
    PointSet,
    TomoPoint,
    as_points,
    dequantizer_stack,
    multi_dequantizer,
    multi_quantizer,
    quantizer_stack,
    resolve_grid,
    tomo_grid,
)

# Star products on more modes than this need allow_large=True.
MAX_DEFAULT_MODES = 3

TRACE_PAIR_COEFFICIENTS = (9.0, 3.0, 3.0)
PRINTED_PAIR_COEFFICIENTS = (3.0, 9.0, 9.0)


def star_kernel(y: TomoPoint, z: TomoPoint, x: TomoPoint) -> complex:
    if not len(y) == len(z) == len(x):
        raise ValueError(f"kernel points have {len(y)}, {len(z)}, {len(x)} modes")
    return complex(np.trace(multi_quantizer(y) @ multi_quantizer(z) @ multi_dequantizer(x)))


def kernel_closed_form(p1, p2, p3, pair_coefficients=TRACE_PAIR_COEFFICIENTS) -> complex:
    """Single-mode kernel as a polynomial in the three unit vectors.

    ``pair_coefficients`` weight the ``m1 m2``, ``m1 m3`` and ``m2 m3`` dot
    product terms in that order.
    """
    (m1, d1), (m2, d2), (m3, d3) = p1, p2, p3
    n1, n2, n3 = (np.asarray(d.n) for d in (d1, d2, d3))
    c12, c13, c23 = pair_coefficients
    return (
        0.25
        + c12 * m1 * m2 * (n1 @ n2)
        + c13 * m1 * m3 * (n1 @ n3)
        + c23 * m2 * m3 * (n2 @ n3)
        + 18j * m1 * m2 * m3 * (n1 @ np.cross(n2, n3))
    )


def kernel_tensor(yz: PointSet, x: PointSet) -> np.ndarray:
    """``K[a, b, c]`` for ``y = yz[a]``, ``z = yz[b]``, ``x = x[c]``."""
    d = quantizer_stack(yz)
    du = np.einsum("bjk,ckl->bcjl", d, dequantizer_stack(x), optimize=True)
    return np.einsum("alj,bcjl->abc", d, du, optimize=True)


# Bound on kernel entries held in memory at once.
_KERNEL_BLOCK = 4_000_000


@lru_cache(maxsize=8)
def _grid_kernel(n_modes: int, degree: int) -> np.ndarray:
    g = tomo_grid(n_modes, degree)
    k = kernel_tensor(g, g)
    k.setflags(write=False)
    return k


def _is_standard_grid(p: PointSet) -> bool:
    return p.degree is not None and p is tomo_grid(p.modes, p.degree)


def star(fA: OperatorSymbol, fB: OperatorSymbol, quad=2, allow_large: bool = False) -> OperatorSymbol:
    """Symbol of the operator product, from the symbols of the factors.

    ``f_C(x) = sum_{y, z} w(y) w(z) fA(y) fB(z) K(y, z, x)`` with the sums
    running over the integration grid selected by ``quad``.
    """
    if fA.modes != fB.modes:
        raise ValueError(f"cannot star a {fA.modes}-mode symbol with a {fB.modes}-mode one")
    n = fA.modes
    if n > MAX_DEFAULT_MODES and not allow_large:
        raise ValueError(f"star product on {n} modes is expensive; pass allow_large=True")
    grid = resolve_grid(quad, n)
    va = fA.values(grid) * grid.weights
    vb = fB.values(grid) * grid.weights
    standard = _is_standard_grid(grid)

    g = len(grid)
    cacheable = standard and g**3 <= _KERNEL_BLOCK

    def fn(points: PointSet) -> np.ndarray:
        if cacheable and points is grid:
            return np.einsum("a,b,abc->c", va, vb, _grid_kernel(n, grid.degree), optimize=True)
        step = max(1, _KERNEL_BLOCK // (g * g))
        out = np.empty(len(points), dtype=complex)
        for lo in range(0, len(points), step):
            chunk = PointSet(points.m[lo:lo + step], points.theta[lo:lo + step], points.psi[lo:lo + step])
            k = kernel_tensor(grid, chunk)
            out[lo:lo + step] = np.einsum("a,b,abc->c", va, vb, k, optimize=True)
        return out

    return OperatorSymbol(n, fn, f"({fA.label} * {fB.label})")


def star_at(fA: OperatorSymbol, fB: OperatorSymbol, point: TomoPoint, quad=2) -> complex:
    return star(fA, fB, quad)(as_points(point))[0]
