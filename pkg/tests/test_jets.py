import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from cpnsurf.jets import (JetOrderError, SingularNormalization, compose_univariate, constant, extract_derivative,
                          jet_expm, jet_reciprocal, seed_coordinate, stack)
from cpnsurf.oracles import fd_wirtinger

coords = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)
DERIVS = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def xi_jets(x0, order=3):
    return seed_coordinate(x0, "xi", order), seed_coordinate(np.conj(x0), "xibar", order)


def test_seed_and_constant():
    z, zb = xi_jets(0.3 + 0.2j)
    assert z.value == 0.3 + 0.2j
    assert extract_derivative(z, 1, 0) == 1 and extract_derivative(z, 0, 1) == 0
    assert extract_derivative(zb, 0, 1) == 1
    assert np.all(constant(np.eye(2), 3).derivative(1, 0) == 0)


@given(coords)
def test_polynomial_derivatives_exact(x0):
    z, zb = xi_jets(x0)
    f = z * z * zb + 3 * zb * zb
    assert f.derivative(2, 1) == pytest.approx(2)
    assert f.derivative(1, 1) == pytest.approx(2 * x0)
    assert f.derivative(0, 2) == pytest.approx(6)
    assert f.derivative(1, 0) == pytest.approx(2 * x0 * np.conj(x0))


@given(coords)
def test_nonholomorphic_field_matches_finite_differences(x0):
    # f = |xi|^2 / (1 + |xi|^2) exercises products, conjugation and division
    def num(xi):
        r = abs(xi) ** 2
        return np.array(r / (1 + r))

    z, zb = xi_jets(x0)
    r = z * zb
    f = r * jet_reciprocal(r + 1.0)
    for a, b in DERIVS:
        assert abs(f.derivative(a, b) - fd_wirtinger(num, x0, a, b)) < 1e-6


def test_conjugation_swaps_variables():
    z, _ = xi_jets(0.4 - 0.1j)
    w = z * z
    c = w.conj()
    assert c.derivative(0, 1) == pytest.approx(np.conj(w.derivative(1, 0)))
    assert c.derivative(1, 0) == pytest.approx(0)


def test_real_variable_conjugation_keeps_variables():
    u = seed_coordinate(0.2, "x+", 2, wirtinger=False)
    v = (u * 1j).conj()
    assert v.derivative(1, 0) == pytest.approx(-1j)


def test_matrix_product_rule():
    z, zb = xi_jets(0.1 + 0.5j)
    A = constant(np.array([[1, 2], [0, 1j]]), 3) * z
    B = constant(np.array([[0, 1], [1, 0]]), 3) * zb + constant(np.eye(2), 3)
    C = A @ B
    dA, dbB = A.derivative(1, 0), B.derivative(0, 1)
    assert np.allclose(C.derivative(1, 1), dA @ dbB)


def test_reciprocal_singular():
    z, _ = xi_jets(0.0)
    with pytest.raises(SingularNormalization):
        jet_reciprocal(z)


def test_order_mismatch_and_bounds():
    a, b = seed_coordinate(0, "xi", 2), seed_coordinate(0, "xi", 3)
    with pytest.raises(JetOrderError):
        a + b
    with pytest.raises(JetOrderError):
        extract_derivative(a, 2, 1)


def test_compose_univariate_exp():
    x0 = 0.3 - 0.7j
    z, _ = xi_jets(x0, 4)
    e = compose_univariate(z, [np.exp(x0)] * 5)
    for m in range(5):
        assert e.derivative(m, 0) == pytest.approx(np.exp(x0))


def test_jet_expm_value_and_derivative():
    x0 = 0.25 + 0.1j
    z, zb = xi_jets(x0, 2)
    G = np.array([[0, 1], [-1, 0.5j]])
    E = jet_expm(constant(G, 2) * (z + zb))
    t = 2 * x0.real
    assert np.allclose(E.value, scipy.linalg.expm(G * t), atol=1e-13)
    num = lambda xi: scipy.linalg.expm(G * 2 * xi.real)
    for a, b in DERIVS:
        assert np.abs(E.derivative(a, b) - fd_wirtinger(num, x0, a, b)).max() < 1e-6


def test_stack_and_evaluate():
    z, zb = xi_jets(0.0, 2)
    v = stack([z, zb, constant(1.0, 2)])
    assert v.value_shape == (3,)
    assert np.allclose(v.evaluate(0.1, 0.2), [0.1, 0.2, 1.0])
