"""Invariant suites shared by ``fermitomo verify`` and the test-suite.

Each suite returns a :class:`SuiteResult` holding the worst deviation seen.
A suite passes when that deviation is strictly below the tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .fermi_symbols import antisymmetry_check, fermi_symbol, vacuum_tomogram_values
from .jordan_wigner import anticommutation_residuals, build_algebra, density_matrix, vacuum
from .sampling import random_angles, random_density_matrix, random_operator, rng_from_seed
from .star import MAX_DEFAULT_MODES, kernel_closed_form, star, star_kernel
from .tomography import (
    PointSet,
    delta_kernel,
    dequantizer,
    quantizer,
    reconstruct,
    reproduce,
    symbol_of,
    tomo_grid,
    tomogram,
    tomogram_via_dequantizer,
)

SUITES = ("anticommutation", "vacuum", "tomogram", "reconstruction", "kernel", "star", "symbols", "antisymmetry")


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    checks: int
    details: dict = field(default_factory=dict)


def _result(name, worst, tol, checks, **details) -> SuiteResult:
    worst = float(worst)
    return SuiteResult(name, bool(worst < tol), worst, tol, int(checks), details)


def suite_anticommutation(n_modes, tol, rng, samples):
    worst, details = 0.0, {}
    for n in range(1, n_modes + 1):
        res = anticommutation_residuals(build_algebra(n))
        details[str(n)] = max(res.values())
        worst = max(worst, details[str(n)])
    return _result("anticommutation", worst, tol, n_modes, per_modes=details)


def suite_vacuum(n_modes, tol, rng, samples):
    worst, checks = 0.0, 0
    for n in range(1, n_modes + 1):
        alg, vac = build_algebra(n), vacuum(n)
        for j in range(1, n + 1):
            worst = max(worst, float(np.linalg.norm(alg.a(j) @ vac)))
            checks += 1
    return _result("vacuum", worst, tol, checks)


def suite_tomogram(n_modes, tol, rng, samples):
    worst = {"negativity": 0.0, "normalization": 0.0, "path_agreement": 0.0}
    checks = 0
    for _ in range(samples):
        rho = random_density_matrix(2**n_modes, rng)
        angles = random_angles(n_modes, rng)
        p = tomogram(rho, angles)
        q = tomogram_via_dequantizer(rho, angles)
        worst["negativity"] = max(worst["negativity"], float(max(0.0, -p.min())))
        worst["normalization"] = max(worst["normalization"], abs(float(p.sum()) - 1.0))
        worst["path_agreement"] = max(worst["path_agreement"], float(np.abs(p - q).max()))
        checks += 1
    return _result("tomogram", max(worst.values()), tol, checks, **worst)


def suite_reconstruction(n_modes, tol, rng, samples):
    worst = 0.0
    for _ in range(samples):
        a = random_operator(2**n_modes, rng)
        worst = max(worst, float(np.abs(reconstruct(symbol_of(a), 2) - a).max()))
    return _result("reconstruction", worst, tol, samples)


def suite_kernel(n_modes, tol, rng, samples):
    grid = tomo_grid(1, 2)
    reproducing, trace_form = 0.0, 0.0
    for _ in range(samples):
        f = symbol_of(random_operator(2, rng))
        k = int(rng.integers(len(grid)))
        x = grid.point(k)
        reproducing = max(reproducing, abs(reproduce(f, x) - f(x)))
        y = random_angles(2, rng)
        ms = rng.choice([0.5, -0.5], size=2)
        p1, p2 = (ms[0], y[0].direction), (ms[1], y[1].direction)
        direct = np.trace(quantizer(*p1) @ dequantizer(*p2))
        trace_form = max(trace_form, abs(direct - delta_kernel(p1, p2)))
    return _result(
        "kernel", max(reproducing, trace_form), tol, samples,
        reproducing=float(reproducing), trace_form=float(trace_form),
    )


def suite_star(n_modes, tol, rng, samples):
    n = min(n_modes, 2)
    grid = tomo_grid(n, 2)
    oracle = 0.0
    for _ in range(samples):
        a, b = random_operator(2**n, rng), random_operator(2**n, rng)
        fc = star(symbol_of(a), symbol_of(b))
        oracle = max(oracle, float(np.abs(fc(grid) - symbol_of(a @ b)(grid)).max()))
    alg = build_algebra(n_modes if n_modes <= MAX_DEFAULT_MODES else n)
    g = tomo_grid(alg.n_modes, 2)
    anti = 0.0
    for j in range(1, alg.n_modes + 1):
        fa, fad = symbol_of(alg.a(j)), symbol_of(alg.adag(j))
        pts = g if len(g) <= 144 else _subset(g, rng, 8)
        lhs = star(fa, fad)(pts) + star(fad, fa)(pts)
        anti = max(anti, float(np.abs(lhs - 1.0).max()))
    closed = 0.0
    for _ in range(samples):
        ang = random_angles(3, rng)
        ms = rng.choice([0.5, -0.5], size=3)
        p = [(ms[k], ang[k].direction) for k in range(3)]
        closed = max(closed, abs(star_kernel([p[0]], [p[1]], [p[2]]) - kernel_closed_form(*p)))
    worst = max(oracle, anti, closed)
    return _result(
        "star", worst, tol, 2 * samples + alg.n_modes,
        oracle=oracle, anticommutator=anti, kernel_closed_form=float(closed),
    )


def _subset(grid, rng, k):
    idx = np.sort(rng.choice(len(grid), size=k, replace=False))
    return PointSet(grid.m[idx], grid.theta[idx], grid.psi[idx])


def suite_symbols(n_modes, tol, rng, samples):
    n = min(n_modes, 4)
    alg = build_algebra(n)
    grid = tomo_grid(n, 2)
    worst = 0.0
    for j in range(1, n + 1):
        for creation, op in ((False, alg.a(j)), (True, alg.adag(j))):
            diff = fermi_symbol(n, j, creation)(grid) - symbol_of(op)(grid)
            worst = max(worst, float(np.abs(diff).max()))
    vac = symbol_of(density_matrix(vacuum(n)))(grid)
    vac_dev = float(np.abs(vac - vacuum_tomogram_values(grid)).max())
    return _result("symbols", max(worst, vac_dev), tol, 2 * n + 1, operators=worst, vacuum=vac_dev)


def suite_antisymmetry(n_modes, tol, rng, samples):
    n = min(n_modes, 4)
    worst, pauli_ok, checks = 0.0, True, 0
    if n < 2:
        return _result("antisymmetry", 0.0, tol, 0, skipped="needs at least two modes")
    for i, j in itertools.combinations(range(1, n + 1), 2):
        rep = antisymmetry_check(n, i, j)
        worst = max(worst, rep.max_deviation, rep.state_sign_residual)
        pauli_ok &= rep.pauli_zero
        checks += 1
    res = _result("antisymmetry", worst, tol, checks, pauli_exclusion=pauli_ok)
    res.passed = res.passed and pauli_ok
    return res


_RUNNERS = {
    "anticommutation": suite_anticommutation,
    "vacuum": suite_vacuum,
    "tomogram": suite_tomogram,
    "reconstruction": suite_reconstruction,
    "kernel": suite_kernel,
    "star": suite_star,
    "symbols": suite_symbols,
    "antisymmetry": suite_antisymmetry,
}


def run_suites(n_modes: int, tolerance: float, seed: int, samples: int = 20, suites=SUITES) -> list[SuiteResult]:
    """Run the named suites in canonical order, each with its own seeded stream."""
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    results = []
    for k, name in enumerate(SUITES):
        if name not in suites:
            continue
        rng = rng_from_seed(np.random.SeedSequence([int(seed), k]).generate_state(1)[0])
        results.append(_RUNNERS[name](n_modes, tolerance, rng, samples))
    return results


def report(results: list[SuiteResult]) -> dict:
    failing = [r.name for r in results if not r.passed]
    return {
        "passed": not failing,
        "first_failure": failing[0] if failing else None,
        "suites": [asdict(r) for r in results],
    }
