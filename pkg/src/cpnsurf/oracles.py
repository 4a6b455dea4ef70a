"""Independent reference computations used to cross-check the jet code path.

Projectors are rebuilt pointwise by Gram-Schmidt on ``f_0, f_0', ..., f_0^(k)``
and derivatives are taken by central finite differences in ``Re xi`` and
``Im xi``.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .chain import HolomorphicCurve

__all__ = ["gram_schmidt_projectors", "fd_wirtinger", "fd_lightcone", "H_FIRST", "H_SECOND"]

H_FIRST = 1e-5
H_SECOND = 1e-4


def gram_schmidt_projectors(curve: HolomorphicCurve, xi: complex) -> list[np.ndarray]:
    """``P_k`` at ``xi`` for ``k = 0..N-1`` without any jet arithmetic."""
    basis: list[np.ndarray] = []
    out = []
    for m in range(curve.n):
        v = curve.derivative(xi, m)
        for b in basis:
            v = v - b * np.vdot(b, v)
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            raise ValueError(f"derivatives of the curve are linearly dependent at xi={xi!r}")
        v = v / nrm
        basis.append(v)
        out.append(np.outer(v, v.conj()))
    return out


def _partials(f: Callable[[float, float], np.ndarray], x: float, y: float, order: int):
    if order == 1:
        h = H_FIRST
        fx = (f(x + h, y) - f(x - h, y)) / (2 * h)
        fy = (f(x, y + h) - f(x, y - h)) / (2 * h)
        return fx, fy
    h = H_SECOND
    f0 = f(x, y)
    fxx = (f(x + h, y) - 2 * f0 + f(x - h, y)) / h ** 2
    fyy = (f(x, y + h) - 2 * f0 + f(x, y - h)) / h ** 2
    fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h ** 2)
    return fxx, fxy, fyy


def fd_wirtinger(func: Callable[[complex], np.ndarray], xi: complex, a: int, b: int) -> np.ndarray:
    """``d^a dbar^b func`` at ``xi`` for ``a + b <= 2`` by central differences.

    ``d = (d_x - i d_y)/2`` and ``dbar = (d_x + i d_y)/2``.
    """
    f = lambda x, y: np.asarray(func(complex(x, y)), dtype=complex)
    x, y = xi.real, xi.imag
    if (a, b) == (0, 0):
        return f(x, y)
    if a + b == 1:
        fx, fy = _partials(f, x, y, 1)
        return 0.5 * (fx - 1j * fy) if a else 0.5 * (fx + 1j * fy)
    if a + b == 2:
        fxx, fxy, fyy = _partials(f, x, y, 2)
        if a == 2:
            return 0.25 * (fxx - 2j * fxy - fyy)
        if b == 2:
            return 0.25 * (fxx + 2j * fxy - fyy)
        return 0.25 * (fxx + fyy)
    raise ValueError("finite-difference oracle supports derivatives up to order 2")


def fd_lightcone(func: Callable[[float, float], np.ndarray], xp: float, xm: float, a: int, b: int) -> np.ndarray:
    """``d_+^a d_-^b func`` for ``a + b <= 2``."""
    f = lambda u, v: np.asarray(func(u, v), dtype=complex)
    if (a, b) == (0, 0):
        return f(xp, xm)
    if a + b == 1:
        fx, fy = _partials(f, xp, xm, 1)
        return fx if a else fy
    if a + b == 2:
        fxx, fxy, fyy = _partials(f, xp, xm, 2)
        return {(2, 0): fxx, (1, 1): fxy, (0, 2): fyy}[(a, b)]
    raise ValueError("finite-difference oracle supports derivatives up to order 2")
