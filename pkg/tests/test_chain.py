import numpy as np
import pytest
from hypothesis import given, strategies as st

from cpnsurf.chain import (CurveNotFullRank, build_chain, conservation_residual, constant_chain, el_residual,
                           lagrangian_density, polynomial_curve, sheet_constants, veronese_curve)
from cpnsurf.jets import SingularNormalization
from cpnsurf.oracles import fd_wirtinger, gram_schmidt_projectors

points = st.complex_numbers(max_magnitude=1.3, allow_nan=False, allow_infinity=False)
ns = st.integers(2, 4)


def test_veronese_components():
    c = veronese_curve(3)
    assert np.allclose(c.evaluate(2.0), [1, np.sqrt(2) * 2, 4])
    assert np.allclose(veronese_curve(2).evaluate(0.5j), [1, 0.5j])
    with pytest.raises(ValueError):
        veronese_curve(1)


def test_sheet_constants():
    assert sheet_constants(3) == pytest.approx([1 / 3, 1, 5 / 3])


@given(ns, points)
def test_axioms(n, xi):
    res = build_chain(veronese_curve(n), xi).axiom_residuals()
    assert set(res) == {"idempotent", "hermitian", "trace", "orthogonal", "complete"}
    assert max(res.values()) < 1e-10


@given(ns, points)
def test_matches_gram_schmidt(n, xi):
    c = build_chain(veronese_curve(n), xi)
    for k, ref in enumerate(gram_schmidt_projectors(veronese_curve(n), xi)):
        assert np.linalg.norm(c.P(k) - ref) < 1e-10


@given(ns, points)
def test_field_equations(n, xi):
    c = build_chain(veronese_curve(n), xi)
    for k in range(n):
        assert el_residual(c, k) < 1e-9
        assert conservation_residual(c, k) < 1e-9
        assert lagrangian_density(c, k) >= -1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_projector_derivatives_vs_oracle(n):
    curve = veronese_curve(n)
    xi = 0.37 - 0.21j
    c = build_chain(curve, xi)
    for k in range(n):
        f = lambda z: gram_schmidt_projectors(curve, z)[k]
        for a, b in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]:
            assert np.abs(c.P(k, a, b) - fd_wirtinger(f, xi, a, b)).max() < 1e-6


def test_general_polynomial_curve():
    curve = polynomial_curve([[1, 0.3j], [0, 1, 0.5], [0.2, 0, 0, 1]])
    c = build_chain(curve, 0.4 + 0.1j)
    assert max(c.axiom_residuals().values()) < 1e-10
    assert max(el_residual(c, k) for k in range(3)) < 1e-9


def test_rank_deficient_curve_rejected():
    curve = polynomial_curve([[1.0], [0.0, 1.0], [0.0, 2.0]])
    with pytest.raises(CurveNotFullRank):
        build_chain(curve, 0.3)


def test_vanishing_seed_rejected():
    curve = polynomial_curve([[0.0, 1.0], [0.0, 0.0, 1.0]])
    with pytest.raises((SingularNormalization, CurveNotFullRank)):
        build_chain(curve, 0.0)


def test_constant_chain_is_trivial_solution():
    c = constant_chain(3)
    assert max(c.axiom_residuals().values()) < 1e-14
    assert np.all(c.P(1, 1, 0) == 0)


def test_lower_sum():
    c = build_chain(veronese_curve(3), 0.2)
    assert np.allclose(c.lower_sum(2), c.P(0) + c.P(1))
    assert np.allclose(c.lower_sum(0), 0)
