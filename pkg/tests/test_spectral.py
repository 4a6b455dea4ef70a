import numpy as np
import pytest
from hypothesis import given, strategies as st

from cpnsurf import spectral as sp
from cpnsurf.chain import build_chain, veronese_curve
from cpnsurf.surfaces import surface_jet

lams = st.floats(-2.5, 2.5).map(lambda s: 1j * s)
taus = st.sampled_from([0.3, 0.5, 1.0, 2.0])


@pytest.fixture(scope="module", params=[2, 3, 4])
def chain(request):
    return build_chain(veronese_curve(request.param), 0.35 - 0.25j)


@given(lams)
def test_zero_curvature_and_lax(chain, lam):
    for k in range(chain.n):
        assert sp.zero_curvature_residual(chain, k, lam) < 1e-8
        assert max(sp.lax_residuals(chain, k, lam)) < 1e-8
        phi = sp.wavefunction(chain, k, lam).value
        inv = sp.wavefunction_inverse(chain, k, lam).value
        assert np.linalg.norm(phi @ inv - np.eye(chain.n)) < 1e-10


@given(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_lambda_derivative_matches_difference_quotient(chain, lam):
    if min(abs(lam - 1), abs(lam + 1)) < 0.2:
        return
    h = 1e-6
    fd = (sp.wavefunction(chain, 1, lam + h).value - sp.wavefunction(chain, 1, lam - h).value) / (2 * h)
    assert np.abs(sp.dlambda_wavefunction(chain, 1, lam) - fd).max() < 1e-6 * max(1, np.abs(fd).max())


@given(lams, taus)
def test_sym_tafel_two_paths(chain, lam, tau):
    p = sp.SpectralParams(lam, tau)
    for k in range(chain.n):
        a = sp.sym_tafel_surface(chain, k, p)
        assert np.allclose(a, sp.sym_tafel_from_wavefunction(chain, k, p), atol=1e-10)
        assert np.linalg.norm(a + a.conj().T) < 1e-10 and abs(np.trace(a)) < 1e-10


@pytest.mark.parametrize("tau", [0.3, 0.5, 1.0, 2.0])
def test_coincidence_with_weierstrass(chain, tau):
    for lam in sp.coincidence_lambdas(tau):
        for k in range(chain.n):
            X = surface_jet(chain, k).value
            assert np.linalg.norm(sp.sym_tafel_surface(chain, k, sp.SpectralParams(lam, tau)) - X) < 1e-10


@pytest.mark.parametrize("kind", ["holomorphic", "antiholomorphic"])
@given(n=st.integers(2, 6), tau=st.floats(0.05, 4.0))
def test_constraint_roots(kind, n, tau):
    for r in sp.st_constraint_roots(kind, n, tau):
        assert sp.st_scalar_condition(kind, n, tau, r) < 1e-9


def test_scalar_condition_detects_non_roots():
    assert sp.st_scalar_condition("holomorphic", 3, 1.0, 0.3j) > 1e-3
    assert sp.st_scalar_condition("antiholomorphic", 3, 1.0, 0.3j) > 1e-3


def test_last_sheet_printed_forms(chain):
    lam = 0.7j
    assert np.allclose(sp.printed_antiholomorphic_wavefunction(chain, lam),
                       sp.wavefunction(chain, chain.n - 1, lam).value, atol=1e-12)
    # the printed surface for the last sheet is not the closed form
    p = sp.SpectralParams(lam, 1.0)
    diff = sp.printed_antiholomorphic_st(chain, p) - sp.sym_tafel_surface(chain, chain.n - 1, p)
    assert np.linalg.norm(diff) > 1.0


def test_poles_and_parameters():
    c = build_chain(veronese_curve(2), 0.1)
    with pytest.raises(sp.SpectralPole):
        sp.wavefunction(c, 0, 1.0)
    with pytest.raises(sp.SpectralPole):
        sp.SpectralParams(-1.0)
    with pytest.raises(ValueError):
        sp.SpectralParams(0.5j, 0.0)


def test_grid_is_imaginary():
    g = sp.default_lambda_grid(-2, 2, 0.5)
    assert len(g) == 9 and np.all(g.real == 0)
    assert g[0] == -2j and g[-1] == 2j


def test_scans():
    c = build_chain(veronese_curve(3), 0.2 + 0.1j)
    rows = sp.st_lambda_scan(c, 1, 1.0)
    best = min((r for r in rows if not r["pole"]), key=lambda r: r["distance"])
    assert best["distance"] < 1e-10 and abs(best["lambda_im"]) == pytest.approx(1.0)
    mixed = sp.st_mixed_constraint_scan(c, 1, 1.0, [1.0, -1j])
    assert mixed[0]["pole"] and not mixed[1]["pole"]
    assert mixed[1]["residual_matrix"] < 1e-9
    with pytest.raises(ValueError):
        sp.st_mixed_constraint_scan(c, 0, 1.0)
