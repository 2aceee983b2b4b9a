import itertools
from functools import reduce

import numpy as np
import pytest

from fermitomo.jordan_wigner import (
    anticommutation_residuals,
    build_algebra,
    creation_string,
    density_matrix,
    fock_state,
    vacuum,
)
from fermitomo.linalg import anticommutator

ONE = np.eye(2)
SP = np.array([[0, 1], [0, 0]])
SM = SP.T
SZ = np.diag([1, -1])


def tensor(*factors):
    return reduce(np.kron, factors)


# Annihilators written out factor by factor, slot 1 leftmost.
PAPER_STRINGS = {
    1: [tensor(SP)],
    2: [tensor(ONE, SP), tensor(SP, SZ)],
    3: [tensor(ONE, ONE, SP), tensor(ONE, SP, SZ), tensor(SP, SZ, SZ)],
    4: [
        tensor(ONE, ONE, ONE, SP),
        tensor(ONE, ONE, SP, SZ),
        tensor(ONE, SP, SZ, SZ),
        tensor(SP, SZ, SZ, SZ),
    ],
}


def test_single_mode_matrices():
    alg = build_algebra(1)
    assert np.array_equal(alg.a(1), [[0, 1], [0, 0]])
    assert np.array_equal(alg.adag(1), [[0, 0], [1, 0]])


def test_two_mode_matrices_entrywise():
    alg = build_algebra(2)
    assert np.array_equal(alg.a(1), [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert np.array_equal(alg.a(2), [[0, 0, 1, 0], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matches_written_tensor_strings(n):
    alg = build_algebra(n)
    for j, expected in enumerate(PAPER_STRINGS[n], start=1):
        assert np.array_equal(alg.a(j), expected)
        # creators: sigma_+ replaced by sigma_-
        assert np.array_equal(alg.adag(j), creation_string(n, j))
        assert np.array_equal(alg.adag(j), expected.T)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_canonical_anticommutation(n):
    alg = build_algebra(n)
    eye = np.eye(2**n)
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        assert np.linalg.norm(anticommutator(alg.a(i), alg.a(j))) < 1e-12
        assert np.linalg.norm(anticommutator(alg.adag(i), alg.adag(j))) < 1e-12
        assert np.linalg.norm(anticommutator(alg.a(i), alg.adag(j)) - (i == j) * eye) < 1e-12
    assert max(anticommutation_residuals(alg).values()) < 1e-12


def test_anticommutator_examples():
    a1 = build_algebra(1)
    assert np.array_equal(anticommutator(a1.a(1), a1.adag(1)), np.eye(2))
    a2 = build_algebra(2)
    assert not np.any(anticommutator(a2.a(1), a2.a(2)))
    assert not np.any(anticommutator(a2.a(1), a2.adag(2)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_nilpotent_and_number_projectors(n):
    alg = build_algebra(n)
    for j in range(1, n + 1):
        assert not np.any(alg.a(j) @ alg.a(j))
        num = alg.number(j)
        assert np.allclose(num @ num, num, atol=1e-14)
        assert set(np.round(np.linalg.eigvalsh(num), 12)) <= {0.0, 1.0}


def test_vacuum_examples():
    assert np.array_equal(vacuum(1), [1, 0])
    assert np.array_equal(vacuum(2), [1, 0, 0, 0])
    assert np.array_equal(density_matrix(vacuum(2)), np.diag([1, 0, 0, 0]))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_vacuum_annihilated(n):
    alg, vac = build_algebra(n), vacuum(n)
    for j in range(1, n + 1):
        assert np.linalg.norm(alg.a(j) @ vac) < 1e-14


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_vacuum_is_unique_common_kernel(n):
    alg = build_algebra(n)
    stacked = np.vstack(alg.annihilators)
    s = np.linalg.svd(stacked, compute_uv=False)
    kernel_dim = 2**n - np.sum(s > 1e-10)
    assert kernel_dim == 1
    _, _, vh = np.linalg.svd(stacked)
    null = vh[-1].conj()
    assert abs(abs(np.vdot(null, vacuum(n))) - 1) < 1e-12


def test_fock_examples():
    alg = build_algebra(2)
    assert np.array_equal(fock_state(alg, [1]), [0, 1, 0, 0])
    assert np.array_equal(fock_state(alg, [1, 2]), -fock_state(alg, [2, 1]))
    assert not np.any(fock_state(alg, [1, 1]))
    assert abs(np.linalg.norm(fock_state(alg, [1, 2])) - 1) < 1e-15


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


@pytest.mark.parametrize("n, modes", [(3, (1, 2, 3)), (4, (1, 3, 4)), (4, (1, 2, 3, 4))])
def test_fock_state_permutation_sign(n, modes):
    alg = build_algebra(n)
    ref = fock_state(alg, modes)
    for perm in itertools.permutations(range(len(modes))):
        state = fock_state(alg, [modes[k] for k in perm])
        assert np.allclose(state, _perm_sign(perm) * ref, atol=1e-15)


def test_mode_range_errors():
    with pytest.raises(ValueError):
        build_algebra(0)
    with pytest.raises(ValueError):
        build_algebra(11)
    with pytest.raises(ValueError):
        vacuum(11)
    alg = build_algebra(2)
    with pytest.raises(ValueError):
        fock_state(alg, [3])
    with pytest.raises(ValueError):
        alg.a(0)
