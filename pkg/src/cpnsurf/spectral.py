"""Linear spectral problem of the CP^{N-1} model and the Sym-Tafel immersion."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .chain import ProjectorChain
from .jets import Jet, constant
from .linalg import commutator, frob, matrix_poly_residual
from .surfaces import minimal_poly_roots, surface_jet

__all__ = [
    "SpectralParams",
    "SpectralPole",
    "u_matrices",
    "u_jets",
    "zero_curvature_residual",
    "wavefunction",
    "wavefunction_inverse",
    "dlambda_wavefunction",
    "lax_residuals",
    "sym_tafel_surface",
    "sym_tafel_from_wavefunction",
    "coincidence_lambdas",
    "st_constraint_roots",
    "st_scalar_condition",
    "printed_antiholomorphic_wavefunction",
    "printed_antiholomorphic_st",
    "sextic_coefficients",
    "sextic_value",
    "default_lambda_grid",
    "st_mixed_constraint_scan",
    "st_lambda_scan",
]

POLE_TOL = 1e-12


class SpectralPole(ValueError):
    """The spectral parameter sits on a pole at +1 or -1."""


def _check_pole(lam: complex) -> None:
    if abs(lam - 1) <= POLE_TOL or abs(lam + 1) <= POLE_TOL:
        raise SpectralPole(f"lambda = {lam} is a pole (+-1)")


@dataclass(frozen=True)
class SpectralParams:
    lam: complex
    tau: float = 1.0

    def __post_init__(self):
        _check_pole(self.lam)
        if not self.tau > 0:
            raise ValueError("tau must be positive")


def u_jets(chain: ProjectorChain, k: int, lam: complex) -> tuple[Jet, Jet]:
    """``U1 = 2/(1+lam) [dP, P]`` and ``U2 = 2/(1-lam) [dbP, P]`` as jets."""
    _check_pole(lam)
    P = chain.projs[k]
    Pt = P.truncate(P.order - 1)
    dP, dbP = P.d(), P.db()
    U1 = (dP @ Pt - Pt @ dP) * (2 / (1 + lam))
    U2 = (dbP @ Pt - Pt @ dbP) * (2 / (1 - lam))
    return U1, U2


def u_matrices(chain: ProjectorChain, k: int, lam: complex) -> tuple[np.ndarray, np.ndarray]:
    U1, U2 = u_jets(chain, k, lam)
    return U1.value, U2.value


def zero_curvature_residual(chain: ProjectorChain, k: int, lam: complex) -> float:
    """``||dbar U1 - d U2 + [U1, U2]||_F`` at the base point."""
    if chain.order < 2:
        raise ValueError("zero curvature needs jets of order >= 2")
    U1, U2 = u_jets(chain, k, lam)
    return frob(U1.derivative(0, 1) - U2.derivative(1, 0) + commutator(U1.value, U2.value))


def _lower_sum_jet(chain: ProjectorChain, k: int) -> Jet:
    S = constant(np.zeros((chain.n, chain.n)), chain.order)
    for j in range(k):
        S = S + chain.projs[j]
    return S


def wavefunction(chain: ProjectorChain, k: int, lam: complex) -> Jet:
    """``Phi_k = I + 4 lam/(1-lam)^2 sum_{j<k} P_j - 2/(1-lam) P_k``."""
    _check_pole(lam)
    I = constant(np.eye(chain.n), chain.order)
    return I + _lower_sum_jet(chain, k) * (4 * lam / (1 - lam) ** 2) - chain.projs[k] * (2 / (1 - lam))


def wavefunction_inverse(chain: ProjectorChain, k: int, lam: complex) -> Jet:
    """``Phi_k^{-1} = I - 4 lam/(1+lam)^2 sum_{j<k} P_j - 2/(1+lam) P_k``."""
    _check_pole(lam)
    I = constant(np.eye(chain.n), chain.order)
    return I - _lower_sum_jet(chain, k) * (4 * lam / (1 + lam) ** 2) - chain.projs[k] * (2 / (1 + lam))


def dlambda_wavefunction(chain: ProjectorChain, k: int, lam: complex) -> np.ndarray:
    """``d Phi_k / d lam`` at the base point, differentiated in closed form."""
    _check_pole(lam)
    return (4 * (1 + lam) / (1 - lam) ** 3) * chain.lower_sum(k) - (2 / (1 - lam) ** 2) * chain.P(k)


def lax_residuals(chain: ProjectorChain, k: int, lam: complex) -> tuple[float, float]:
    """``||d Phi - U1 Phi||`` and ``||dbar Phi - U2 Phi||`` at the base point."""
    Phi = wavefunction(chain, k, lam)
    U1, U2 = u_matrices(chain, k, lam)
    v = Phi.value
    return (frob(Phi.derivative(1, 0) - U1 @ v), frob(Phi.derivative(0, 1) - U2 @ v))


def sym_tafel_surface(chain: ProjectorChain, k: int, params: SpectralParams) -> np.ndarray:
    """Closed form ``-2 i tau/(1-lam^2) (P_k + 2 sum_{j<k} P_j - c_k I)``."""
    lam, tau = params.lam, params.tau
    B = chain.P(k) + 2 * chain.lower_sum(k) - chain.c[k] * np.eye(chain.n)
    return (-2j * tau / (1 - lam ** 2)) * B


def sym_tafel_from_wavefunction(chain: ProjectorChain, k: int, params: SpectralParams) -> np.ndarray:
    """``-i tau (Phi^{-1} d_lam Phi - 2 c_k/(1-lam^2) I)``."""
    lam, tau = params.lam, params.tau
    inv = wavefunction_inverse(chain, k, lam).value
    dphi = dlambda_wavefunction(chain, k, lam)
    return -1j * tau * (inv @ dphi - (2 * chain.c[k] / (1 - lam ** 2)) * np.eye(chain.n))


def coincidence_lambdas(tau: float) -> tuple[complex, complex]:
    """``lam = +-sqrt(1 - 2 tau)``, where the Sym-Tafel and Weierstrass surfaces agree."""
    r = cmath.sqrt(1 - 2 * tau)
    return r, -r


# ---------------------------------------------------------------------------
# constraints on the spectral parameter

def st_scalar_condition(kind: str, n: int, tau: float, lam: complex) -> float:
    """Residual of the idempotency-derived scalar condition ``num/den = 1``.

    Evaluated in cross-multiplied form ``|num - den| / max(1, |num|, |den|)``,
    which stays finite at roots where both sides vanish (and for N = 2, where
    the holomorphic denominator is identically zero).
    """
    u = 1 - lam ** 2
    if kind == "holomorphic":
        c = 1.0 / n
        num = (u - 2 * c * tau * n) * (u - n * (1 + 2 * c * tau - lam ** 2))
        den = 2 * tau * n * (2 - n) * (lam ** 2 - 1) + 4 * tau ** 2 * n ** 2 * (2 * c - 1)
    elif kind == "antiholomorphic":
        c = (2 * n - 1) / n
        num = u ** 2 * (1 - n) + 2 * tau * n ** 2 * ((2 - c) * u + 2 * tau * (c + 2) ** 2)
        den = 2 * tau * n ** 2 * (1 + tau * (6 + 4 * c) - lam ** 2)
    else:
        raise ValueError(f"unknown constraint kind {kind!r}")
    return float(abs(num - den) / max(1.0, abs(num), abs(den)))


def st_constraint_roots(kind: str, n: int, tau: float) -> list[complex]:
    """Closed-form spectral parameters solving the holomorphic / anti-holomorphic constraint."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not tau > 0:
        raise ValueError("tau must be positive")
    if kind == "holomorphic":
        c = 1.0 / n
        r1 = cmath.sqrt(1 - 2 * tau * n * (c - 1))
        r2 = cmath.sqrt((n - 1 + 2 * tau * n * (c - 1)) / (n - 1))
        return [r1, -r1, r2, -r2]
    if kind == "antiholomorphic":
        c = (2 * n - 1) / n
        disc = cmath.sqrt(tau ** 2 * n ** 2 * (4 * (n - 1) * (c + 1) ** 2 + n ** 2 * (c - 1) ** 2))
        out = []
        for sgn in (1, -1):
            inner = cmath.sqrt(n - 1 + tau * n ** 2 * (c - 1) + sgn * disc) / np.sqrt(n - 1)
            out.extend([inner, -inner])
        return out
    raise ValueError(f"unknown constraint kind {kind!r}")


def printed_antiholomorphic_wavefunction(chain: ProjectorChain, lam: complex) -> np.ndarray:
    """``((1+lam)/(1-lam))^2 (I - 2/(1+lam) P_{N-1})`` as printed for the last sheet."""
    _check_pole(lam)
    n = chain.n
    return ((1 + lam) / (1 - lam)) ** 2 * (np.eye(n) - (2 / (1 + lam)) * chain.P(n - 1))


def printed_antiholomorphic_st(chain: ProjectorChain, params: SpectralParams) -> np.ndarray:
    """``2 i tau/(1-lam^2) ((2 + c) I - P_{N-1})`` as printed for the last sheet."""
    n = chain.n
    c = chain.c[n - 1]
    lam, tau = params.lam, params.tau
    return (2j * tau / (1 - lam ** 2)) * ((2 + c) * np.eye(n) - chain.P(n - 1))


def sextic_coefficients(c: float) -> tuple[complex, complex, complex, complex]:
    """Printed coefficients ``(a6, a4, a2, a0)`` of the mixed-sheet polynomial in ``lam``."""
    a6 = 1j * c * (c - 1) * (c - 2)
    a4 = c * (8 - 6j + (6 + 9j) * c - (2 + 1j) * 3 * c ** 2) - 4
    a2 = 8 - 12j + c * (2 + 1j) * (2 + 20j - (9 + 6j) * c + (3 - 6j) * c ** 2)
    a0 = 4 + 12j - (16 + 38j) * c + (38 + 15j) * c ** 2 + (2 + 11j) * c ** 3
    return a6, a4, a2, a0


def sextic_value(c: float, lam: complex) -> complex:
    a6, a4, a2, a0 = sextic_coefficients(c)
    return a6 * lam ** 6 + a4 * lam ** 4 + a2 * lam ** 2 + a0


def default_lambda_grid(lo: float = -3.0, hi: float = 3.0, step: float = 0.05) -> np.ndarray:
    """Imaginary grid ``lam = i s`` with points near the poles removed."""
    s = np.round(np.arange(lo, hi + step / 2, step), 10)
    lam = 1j * s
    keep = (np.abs(lam - 1) >= 0.05) & (np.abs(lam + 1) >= 0.05)
    return lam[keep]


def st_mixed_constraint_scan(chain: ProjectorChain, k: int, tau: float,
                             grid: Iterable[complex] | None = None) -> list[dict]:
    """Cubic minimal-polynomial residual of ``X^ST`` over a grid of ``lam``.

    Rows hold ``lambda_re``, ``lambda_im``, ``residual_matrix`` (Frobenius norm
    of the cubic evaluated at ``X^ST``), ``residual_sextic`` (modulus of the
    printed polynomial) and ``pole`` (True where the point was skipped).
    """
    n = chain.n
    if not 1 <= k <= n - 2:
        raise ValueError(f"k={k} is not a mixed sheet for N={n}")
    grid = default_lambda_grid() if grid is None else grid
    roots = minimal_poly_roots(k, n)
    rows = []
    for lam in grid:
        lam = complex(lam)
        row = {"lambda_re": lam.real, "lambda_im": lam.imag}
        try:
            X = sym_tafel_surface(chain, k, SpectralParams(lam, tau))
        except SpectralPole:
            row.update(residual_matrix=float("nan"), residual_sextic=float("nan"), pole=True)
        else:
            row.update(residual_matrix=matrix_poly_residual(X, roots),
                       residual_sextic=abs(sextic_value(chain.c[k], lam)), pole=False)
        rows.append(row)
    return rows


def st_lambda_scan(chain: ProjectorChain, k: int, tau: float,
                   grid: Iterable[complex] | None = None) -> list[dict]:
    """Distance ``||X^ST - X_k||_F`` over a grid of spectral parameters."""
    grid = default_lambda_grid() if grid is None else grid
    Xk = surface_jet(chain, k).value
    rows = []
    for lam in grid:
        lam = complex(lam)
        row = {"lambda_re": lam.real, "lambda_im": lam.imag}
        try:
            X = sym_tafel_surface(chain, k, SpectralParams(lam, tau))
        except SpectralPole:
            row.update(distance=float("nan"), antihermitian=float("nan"), pole=True)
        else:
            row.update(distance=frob(X - Xk), antihermitian=frob(X + X.conj().T), pole=False)
        rows.append(row)
    return rows
