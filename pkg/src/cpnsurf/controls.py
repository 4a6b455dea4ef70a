"""Deliberately broken fields used as negative controls."""

from __future__ import annotations

from math import comb, sqrt

import numpy as np

from .chain import HolomorphicCurve, projector_from_vector, raise_vector, vector_norm2
from .jets import Jet, constant, seed_coordinate, stack

__all__ = [
    "distorted_veronese_projector",
    "antiholomorphic_projector",
    "perturbed_projector",
    "partial_chain",
    "projector_el_residual",
    "projector_zero_curvature_residual",
]


def distorted_veronese_projector(n: int, xi0: complex, order: int = 3, w: float = 0.5) -> Jet:
    """Projector of ``f(xi) = v(xi + w conj(xi))`` with ``v`` the Veronese curve.

    For ``w != 0`` this is not a harmonic map.
    """
    z = seed_coordinate(xi0, "xi", order) + seed_coordinate(np.conj(xi0), "xibar", order) * w
    comps = []
    p = constant(1.0, order)
    for j in range(n):
        comps.append(p * sqrt(comb(n - 1, j)))
        p = p * z
    return projector_from_vector(stack(comps))


def antiholomorphic_projector(curve: HolomorphicCurve, xi0: complex, order: int = 3) -> Jet:
    """``P_0`` built from ``f_0(conj(xi))``."""
    anti = HolomorphicCurve(curve.coefficients, antiholomorphic=True)
    return projector_from_vector(anti.jet(xi0, order))


def perturbed_projector(p: Jet, eps: float, rng: np.random.Generator) -> Jet:
    """``p + eps H`` for a random Hermitian ``H`` of unit Frobenius norm."""
    n = p.value_shape[0]
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    h /= np.linalg.norm(h)
    return p + constant(eps * h, p.order, p.wirtinger)


def partial_chain(curve: HolomorphicCurve, xi0: complex, order: int = 3) -> list[Jet]:
    """Projectors of the raising recurrence up to the first vanishing vector."""
    f = curve.jet(xi0, order + curve.n - 1)
    out = []
    for _ in range(curve.n):
        if vector_norm2(f).coeffs[0, 0].real <= 1e-24:
            break
        P = projector_from_vector(f)
        out.append(P.truncate(order))
        if f.order == 0:
            break
        f = raise_vector(f, P)
    return out


def projector_el_residual(p: Jet) -> float:
    return float(np.linalg.norm(p.derivative(1, 1) @ p.value - p.value @ p.derivative(1, 1)))


def projector_zero_curvature_residual(p: Jet, lam: complex) -> float:
    """Zero-curvature residual of the linear problem built from an arbitrary projector field."""
    pt = p.truncate(p.order - 1)
    U1 = (p.d() @ pt - pt @ p.d()) * (2 / (1 + lam))
    U2 = (p.db() @ pt - pt @ p.db()) * (2 / (1 - lam))
    a, b = U1.value, U2.value
    return float(np.linalg.norm(U1.derivative(0, 1) - U2.derivative(1, 0) + a @ b - b @ a))
