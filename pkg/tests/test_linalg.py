import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from cpnsurf.linalg import (DimensionError, ExpOverflowError, NotHermitianError, NotSuError, anticommutator,
                            commutator, hermitian_eig, hermitian_eigenvalues, is_su, killing_inner, matrix_exp,
                            matrix_poly_residual, su_defect)

from conftest import random_hermitian, random_matrix

dims = st.integers(2, 6)
seeds = st.integers(0, 2**32 - 1)
scales = st.floats(1e-3, 30.0)


@given(dims, seeds, scales)
def test_matrix_exp_matches_scipy(n, seed, scale):
    a = random_matrix(np.random.default_rng(seed), n) * scale / np.sqrt(n)
    ref = scipy.linalg.expm(a)
    assert np.linalg.norm(matrix_exp(a) - ref) <= 1e-11 * max(1.0, np.linalg.norm(ref))


@given(dims, seeds)
def test_exp_of_antihermitian_is_unitary(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    u = matrix_exp(1j * h)
    assert np.linalg.norm(u @ u.conj().T - np.eye(n)) < 1e-12


def test_exp_rejects_huge_norm():
    with pytest.raises(ExpOverflowError):
        matrix_exp(np.full((2, 2), 1e3))


def test_exp_zero_and_diagonal():
    assert np.allclose(matrix_exp(np.zeros((3, 3))), np.eye(3))
    d = np.diag([0.5, -1.0, 2j])
    assert np.allclose(matrix_exp(d), np.diag(np.exp([0.5, -1.0, 2j])), atol=1e-14)


@given(dims, seeds)
def test_jacobi_eigenvalues_match_lapack(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    w, v = hermitian_eig(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-11)
    assert np.linalg.norm(h @ v - v * w) < 1e-10
    assert np.linalg.norm(v.conj().T @ v - np.eye(n)) < 1e-12


def test_jacobi_degenerate_spectrum():
    # rank-1 projector: eigenvalues 0 (N-1 times) and 1
    v = np.array([1, 2j, -1]) / np.sqrt(6)
    p = np.outer(v, v.conj())
    assert np.allclose(hermitian_eigenvalues(p), [0, 0, 1], atol=1e-14)


def test_input_validation():
    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(DimensionError):
        matrix_exp(np.zeros((2, 3)))
    with pytest.raises(DimensionError):
        matrix_exp(np.zeros((13, 13)))


def test_su_predicates(rng):
    h = random_hermitian(rng, 3)
    x = 1j * (h - np.trace(h) / 3 * np.eye(3))
    assert is_su(x)
    assert su_defect(x) == pytest.approx((0.0, 0.0), abs=1e-14)
    assert not is_su(h)
    with pytest.raises(NotSuError):
        killing_inner(h, x)


def test_killing_inner_pauli():
    sz = np.diag([1j, -1j]) / 2
    assert killing_inner(sz, sz) == pytest.approx(0.25)


def test_brackets_and_poly_residual(rng):
    a, b = random_matrix(rng, 3), random_matrix(rng, 3)
    assert np.allclose(commutator(a, b) + anticommutator(a, b), 2 * a @ b)
    assert matrix_poly_residual(np.diag([1.0, 2.0, 2.0]), [1, 2]) < 1e-15
    assert matrix_poly_residual(np.diag([1.0, 2.0, 3.0]), [1, 2]) > 1
