"""Light-cone CP^{N-1} fields, traveling waves and the Fokas-Gel'fand immersion.

Fields are jets in the two real light-cone variables ``(x+, x-)``.  A
traveling wave depends on ``s = x+ + kappa x-`` only, so ``d_- = kappa d_+``
holds by construction.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from typing import Callable, Iterable

import numpy as np

from .chain import HolomorphicCurve, build_chain, projector_from_vector
from .jets import Jet, compose_linear, compose_univariate, constant, jet_expm, seed_coordinate, stack
from .linalg import anticommutator, commutator, dagger, frob, matrix_exp, rel_residual

__all__ = [
    "ThetaField",
    "TravelingWaveModel",
    "MinkowskiPole",
    "theta_from_projector",
    "rotating_wave_profile",
    "line_restricted_profile",
    "theta_identities",
    "commutator_k_residual",
    "k_matrix",
    "minkowski_weierstrass_tangents",
    "traveling_wavefunction",
    "traveling_lax_residuals",
    "conjugated_generator",
    "FGSample",
    "fg_surface",
    "fg_surface_and_tangents",
    "fd_tangents",
    "kappa_star",
    "tangent_ratio_residual",
    "kappa_coincidence_scan",
]


class MinkowskiPole(ValueError):
    """``lam = +-1``."""


def _check_lam(lam: float) -> None:
    if abs(lam - 1) <= 1e-12 or abs(lam + 1) <= 1e-12:
        raise MinkowskiPole(f"lambda = {lam} is a pole (+-1)")


@dataclass(frozen=True)
class ThetaField:
    """``theta = i(P - I/N)`` as a jet in ``(x+, x-)``."""

    theta: Jet
    n: int

    @property
    def value(self) -> np.ndarray:
        return self.theta.value

    def dplus(self) -> np.ndarray:
        return self.theta.derivative(1, 0)

    def dminus(self) -> np.ndarray:
        return self.theta.derivative(0, 1)

    def generator(self) -> np.ndarray:
        """``M = [d_+ theta, theta]``."""
        return commutator(self.dplus(), self.value)


def theta_from_projector(p: Jet, n: int | None = None, tol: float = 1e-9) -> ThetaField:
    n = p.value_shape[0] if n is None else n
    P = p.value
    if frob(P @ P - P) > tol or frob(P - dagger(P)) > tol or abs(np.trace(P) - 1) > tol:
        raise ValueError("not a rank-1 Hermitian projector")
    return ThetaField(1j * (p - constant(np.eye(n) / n, p.order, p.wirtinger)), n)


@dataclass(frozen=True)
class TravelingWaveModel:
    """Traveling-wave field ``P(s)`` with ``s = x+ + kappa x-``.

    ``profile`` maps a scalar jet ``s`` (real-variable mode) to the projector
    jet ``P(s)``.
    """

    n: int
    profile: Callable[[Jet], Jet]
    kappa: float = 1.0
    lam: float = 0.5
    c1: float = 1.0
    c2: float = 0.0
    c3: float = 0.0
    name: str = "custom"

    def __post_init__(self):
        _check_lam(self.lam)

    def s_jet(self, xp: float, xm: float, order: int) -> Jet:
        sp = seed_coordinate(0.0, "x+", order, wirtinger=False)
        sm = seed_coordinate(0.0, "x-", order, wirtinger=False)
        return sp + sm * self.kappa + (xp + self.kappa * xm)

    def projector(self, xp: float, xm: float, order: int = 2) -> Jet:
        return self.profile(self.s_jet(xp, xm, order))

    def theta(self, xp: float, xm: float, order: int = 2) -> ThetaField:
        return theta_from_projector(self.projector(xp, xm, order), self.n)


def rotating_wave_profile(omega: float, kappa: float = 1.0, lam: float = 0.5,
                          c1: float = 1.0, c2: float = 0.0, c3: float = 0.0) -> TravelingWaveModel:
    """N = 2 reference solution ``f(s) = (cos omega s, sin omega s)``."""
    if omega == 0:
        raise ValueError("omega must be nonzero")

    def profile(s: Jet) -> Jet:
        s0 = complex(s.coeffs[0, 0]).real
        d = range(s.order + 1)
        cos = [omega ** m * np.cos(omega * s0 + m * np.pi / 2) for m in d]
        sin = [omega ** m * np.sin(omega * s0 + m * np.pi / 2) for m in d]
        return projector_from_vector(stack([compose_univariate(s, cos), compose_univariate(s, sin)]))

    return TravelingWaveModel(2, profile, kappa, lam, c1, c2, c3, name=f"rotating(omega={omega})")


def line_restricted_profile(curve: HolomorphicCurve, k: int, xi0: complex = 0.2 + 0.1j,
                            angle: float = 0.3, kappa: float = 1.0, lam: float = 0.5) -> TravelingWaveModel:
    """``P_k(xi0 + e^{i angle} s)`` for a chain built from ``curve``.

    Not a solution of the light-cone field equation in general; useful for the
    purely algebraic theta identities.
    """
    e = cmath.exp(1j * angle)

    def profile(s: Jet) -> Jet:
        s0 = complex(s.coeffs[0, 0]).real
        chain = build_chain(curve, xi0 + e * s0, order=s.order)
        h = s - s0
        return compose_linear(chain.projs[k], h * e, h * e.conjugate())

    return TravelingWaveModel(curve.n, profile, kappa, lam, name=f"line(k={k})")


# ---------------------------------------------------------------------------
# algebraic identities

def k_matrix(theta: np.ndarray, n: int) -> np.ndarray:
    """``K = I + 2i theta - (2/N) I``, which equals ``I - 2P``."""
    return np.eye(n) + 2j * theta - (2 / n) * np.eye(n)


def commutator_k_residual(field: ThetaField, sign: int = 1) -> float:
    """Residual of ``[d theta, theta] K = sign * i d theta`` (worst of d_+ and d_-)."""
    t, n = field.value, field.n
    K = k_matrix(t, n)
    out = 0.0
    for dt in (field.dplus(), field.dminus()):
        out = max(out, rel_residual(commutator(dt, t) @ K, sign * 1j * dt))
    return out


def theta_identities(field: ThetaField) -> dict:
    """Residuals of the algebraic identities satisfied by ``theta`` and its tangents.

    Keys: ``square``, ``anticommutator``, ``sandwich``, ``commutator_k``,
    ``k_tangent``, ``generator_anticommutator``.  Tangent identities take the
    worse of ``d_+`` and ``d_-``.
    """
    t, n = field.value, field.n
    eye = np.eye(n)
    K = k_matrix(t, n)
    out = {"square": rel_residual(t @ t, ((1 - n) / n ** 2) * eye + 1j * ((n - 2) / n) * t)}
    anti = sand = kt = gen = 0.0
    for dt in (field.dplus(), field.dminus()):
        M = commutator(dt, t)
        anti = max(anti, rel_residual(anticommutator(dt, t), 1j * ((n - 2) / n) * dt))
        sand = max(sand, rel_residual(t @ dt @ t, ((n - 1) / n ** 2) * dt))
        kt = max(kt, rel_residual(1j * K @ dt, M))
        gen = max(gen, frob(anticommutator(M, dt)))
    out.update(anticommutator=anti, sandwich=sand, commutator_k=commutator_k_residual(field, 1),
               k_tangent=kt, generator_anticommutator=gen)
    return out


def minkowski_weierstrass_tangents(model: TravelingWaveModel, xp: float, xm: float) -> tuple[np.ndarray, np.ndarray]:
    """``(d_+ X, d_- X) = (-M, kappa M)`` with ``M = [d_+ theta, theta]``."""
    M = model.theta(xp, xm, 1).generator()
    return -M, model.kappa * M


# ---------------------------------------------------------------------------
# wave function and the Fokas-Gel'fand surface

def _chi(model: TravelingWaveModel, xp: float, xm: float) -> float:
    lam, kappa = model.lam, model.kappa
    return lam * (xp / (1 + lam) - kappa * xm / (1 - lam))


def _chi_jet(model: TravelingWaveModel, xp: float, xm: float, order: int) -> Jet:
    lam, kappa = model.lam, model.kappa
    sp = seed_coordinate(xp, "x+", order, wirtinger=False)
    sm = seed_coordinate(xm, "x-", order, wirtinger=False)
    return sp * (lam / (1 + lam)) - sm * (lam * kappa / (1 - lam))


def _wavefunction_jet(model: TravelingWaveModel, xp: float, xm: float, printed: bool) -> Jet:
    field = model.theta(xp, xm, 2)
    n = model.n
    th = field.theta
    tt = th.truncate(1)
    M = th.diff(0) @ tt - tt @ th.diff(0)
    K = constant(np.eye(n) * (1 - 2 / n), 1, False) + 2j * tt
    sign = 2.0 if printed else -2.0
    return K @ jet_expm(_chi_jet(model, xp, xm, 1) * sign * M)


def traveling_wavefunction(model: TravelingWaveModel, xp: float, xm: float, printed: bool = False) -> np.ndarray:
    """``phi = K exp(-2 chi M)`` with ``chi = lam(x+/(1+lam) - kappa x-/(1-lam))``.

    The printed form carries ``exp(+2 chi M)``; it is available with
    ``printed=True`` but solves the linear problem only at ``lam = 0``.
    """
    field = model.theta(xp, xm, 1)
    K = k_matrix(field.value, model.n)
    sign = 2.0 if printed else -2.0
    return K @ matrix_exp(sign * _chi(model, xp, xm) * field.generator())


def traveling_lax_residuals(model: TravelingWaveModel, xp: float, xm: float,
                            printed: bool = False) -> tuple[float, float]:
    """``||d_+ phi - U1 phi||`` and ``||d_- phi - U2 phi||`` with
    ``U1 = -2/(1+lam) M`` and ``U2 = -2 kappa/(1-lam) M``."""
    phi = _wavefunction_jet(model, xp, xm, printed)
    M = model.theta(xp, xm, 1).generator()
    lam = model.lam
    U1 = (-2 / (1 + lam)) * M
    U2 = (-2 * model.kappa / (1 - lam)) * M
    v = phi.value
    return frob(phi.derivative(1, 0) - U1 @ v), frob(phi.derivative(0, 1) - U2 @ v)


def conjugated_generator(model: TravelingWaveModel, xp: float, xm: float) -> tuple[np.ndarray, np.ndarray]:
    """``phi^dagger M phi`` by matrix products, and the closed form ``M exp(4 chi M)``."""
    M = model.theta(xp, xm, 1).generator()
    phi = traveling_wavefunction(model, xp, xm)
    lhs = dagger(phi) @ M @ phi
    rhs = M @ matrix_exp(4 * _chi(model, xp, xm) * M)
    return lhs, rhs


@dataclass(frozen=True)
class FGSample:
    x: np.ndarray
    dplus: np.ndarray
    dminus: np.ndarray
    xp: float
    xm: float


def _fg_generator(model: TravelingWaveModel, xp: float, xm: float) -> np.ndarray:
    M = model.theta(xp, xm, 1).generator()
    phi = traveling_wavefunction(model, xp, xm)
    return dagger(phi) @ M @ phi


def fg_surface(model: TravelingWaveModel, xp: float, xm: float) -> np.ndarray:
    c1, c2, c3, kappa = model.c1, model.c2, model.c3, model.kappa
    pref = -2 * (c1 * xp + kappa * c1 * xm - c1 + c2 + kappa * c3)
    return pref * _fg_generator(model, xp, xm)


def fg_surface_and_tangents(model: TravelingWaveModel, xp: float, xm: float) -> FGSample:
    """Surface and its closed-form tangents."""
    G = _fg_generator(model, xp, xm)
    c1, c2, c3, kappa, lam = model.c1, model.c2, model.c3, model.kappa, model.lam
    x = -2 * (c1 * xp + kappa * c1 * xm - c1 + c2 + kappa * c3) * G
    dplus = -(2 * c1 / (1 + lam)) * G
    dminus = -2 * c1 * (1 + kappa * lam / (1 - lam)) * G
    return FGSample(x, dplus, dminus, xp, xm)


def fd_tangents(model: TravelingWaveModel, xp: float, xm: float, h: float = 1e-4) -> tuple[np.ndarray, np.ndarray]:
    """Central differences of ``fg_surface`` in ``x+`` and ``x-``."""
    f = lambda a, b: fg_surface(model, a, b)
    return ((f(xp + h, xm) - f(xp - h, xm)) / (2 * h),
            (f(xp, xm + h) - f(xp, xm - h)) / (2 * h))


# ---------------------------------------------------------------------------
# coincidence of the two tangent pairs

def kappa_star(lam: float) -> float:
    """``(lam^2 - 1) / (lam^2 + 1)``."""
    return (lam ** 2 - 1) / (lam ** 2 + 1)


def tangent_ratio_residual(kappa: float, lam: float) -> float:
    """``|(d_-/d_+)^FG - (d_-/d_+)^W| = |(1+lam)(1 + kappa lam/(1-lam)) + kappa|``."""
    _check_lam(lam)
    return abs((1 + lam) * (1 + kappa * lam / (1 - lam)) + kappa)


def kappa_coincidence_scan(model: TravelingWaveModel, kappa_grid: Iterable[float],
                           xp: float = 0.3, xm: float = -0.2) -> list[dict]:
    """Tangent-ratio residual and least-squares ``c1`` fit for each ``kappa``.

    ``direction_residual`` is the relative misfit of ``c1 (A_+, A_-)`` against
    the Weierstrass pair, where ``A_+-`` are the FG tangents at ``c1 = 1``.
    """
    rows = []
    for kappa in kappa_grid:
        m = replace(model, kappa=float(kappa), c1=1.0)
        fg = fg_surface_and_tangents(m, xp, xm)
        wp, wm = minkowski_weierstrass_tangents(m, xp, xm)
        A = np.concatenate([fg.dplus.ravel(), fg.dminus.ravel()])
        W = np.concatenate([wp.ravel(), wm.ravel()])
        denom = float(np.vdot(A, A).real)
        c1 = float(np.vdot(A, W).real / denom) if denom > 0 else 0.0
        direction = frob(c1 * A - W) / max(frob(W), 1e-300)
        rows.append({"kappa": float(kappa), "lambda": m.lam,
                     "ratio_residual": tangent_ratio_residual(m.kappa, m.lam),
                     "direction_residual": direction, "fitted_c1": c1})
    return rows
