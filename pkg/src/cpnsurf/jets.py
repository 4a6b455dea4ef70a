"""Truncated bivariate Taylor jets.

A :class:`Jet` stores the normalized Taylor coefficients
``c[a, b] = (d1^a d2^b f) / (a! b!)`` of a scalar, vector or matrix valued
field at a base point, for all ``a + b <= order``.  The two variables are
either the Wirtinger pair ``(xi, xibar)`` treated as independent, or two real
coordinates such as the light-cone pair ``(x+, x-)``.  The only place the two
cases differ is conjugation: in Wirtinger mode conjugating a field swaps the
roles of the two variables.

Coefficient arrays have shape ``(order + 1, order + 1) + value_shape`` with
every entry above the total-degree diagonal held at exactly zero.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Jet",
    "JetOrderError",
    "SingularNormalization",
    "seed_coordinate",
    "constant",
    "conjugate_jet",
    "jet_reciprocal",
    "extract_derivative",
    "compose_univariate",
    "compose_linear",
    "jet_expm",
    "stack",
]


class JetOrderError(ValueError):
    """Raised when jets of different truncation orders are combined, or a
    derivative beyond the available order is requested."""


class SingularNormalization(ZeroDivisionError):
    """Raised when a jet with (numerically) vanishing constant term is inverted."""


@lru_cache(maxsize=None)
def _mask(order: int) -> np.ndarray:
    a = np.arange(order + 1)
    return (a[:, None] + a[None, :]) <= order


_FACT = [math.factorial(i) for i in range(40)]


class Jet:
    """Truncated two-variable Taylor expansion of a (tensor valued) field."""

    __slots__ = ("coeffs", "order", "wirtinger")

    def __init__(self, coeffs, order: int | None = None, wirtinger: bool = True):
        c = np.asarray(coeffs, dtype=complex)
        if order is None:
            order = c.shape[0] - 1
        if c.shape[0] != order + 1 or c.shape[1] != order + 1:
            raise JetOrderError(f"coefficient grid {c.shape[:2]} does not match order {order}")
        m = _mask(order).reshape((order + 1, order + 1) + (1,) * (c.ndim - 2))
        self.coeffs = np.where(m, c, 0.0)
        self.order = order
        self.wirtinger = wirtinger

    # -- basic views --------------------------------------------------------
    @property
    def value_shape(self) -> tuple:
        return self.coeffs.shape[2:]

    @property
    def value(self) -> np.ndarray:
        """Field value at the base point."""
        return self.coeffs[0, 0].copy()

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, shape={self.value_shape}, wirtinger={self.wirtinger})"

    def _like(self, coeffs, order=None) -> "Jet":
        return Jet(coeffs, self.order if order is None else order, self.wirtinger)

    def _check(self, other: "Jet") -> None:
        if other.order != self.order:
            raise JetOrderError(f"order mismatch: {self.order} vs {other.order}")
        if other.wirtinger != self.wirtinger:
            raise JetOrderError("cannot mix Wirtinger and real-variable jets")

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise JetOrderError(f"cannot raise order {self.order} to {order}")
        return self._like(self.coeffs[: order + 1, : order + 1], order)

    def __getitem__(self, idx) -> "Jet":
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self._like(self.coeffs[(slice(None), slice(None)) + idx])

    # -- linear structure ---------------------------------------------------
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            self._check(other)
            return other
        arr = np.asarray(other, dtype=complex)
        c = np.zeros((self.order + 1, self.order + 1) + arr.shape, dtype=complex)
        c[0, 0] = arr
        return self._like(c)

    def __add__(self, other):
        o = self._coerce(other)
        return self._like(self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self._like(self.coeffs - o.coeffs)

    def __rsub__(self, other):
        o = self._coerce(other)
        return self._like(o.coeffs - self.coeffs)

    def __neg__(self):
        return self._like(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return self._like(_cauchy(self.coeffs, other.coeffs, _bmul))
        # plain numbers scale every coefficient
        return self._like(self.coeffs * np.asarray(other, dtype=complex))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * jet_reciprocal(other)
        return self._like(self.coeffs / other)

    def __matmul__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return self._like(_cauchy(self.coeffs, other.coeffs, _bmatmul))
        return self._like(self.coeffs @ np.asarray(other, dtype=complex))

    def __rmatmul__(self, other):
        return self._like(np.asarray(other, dtype=complex) @ self.coeffs)

    # -- structure ----------------------------------------------------------
    def conj(self) -> "Jet":
        """Entrywise complex conjugate of the field (no transpose)."""
        c = self.coeffs.conj()
        if self.wirtinger:
            c = np.swapaxes(c, 0, 1)
        return self._like(c)

    def transpose(self) -> "Jet":
        return self._like(np.swapaxes(self.coeffs, -1, -2))

    def dagger(self) -> "Jet":
        """Conjugate transpose of a matrix field."""
        return self.conj().transpose()

    def trace(self) -> "Jet":
        return self._like(np.trace(self.coeffs, axis1=-2, axis2=-1))

    def diff(self, var: int) -> "Jet":
        """Derivative with respect to variable ``var`` (0 or 1); order drops by one."""
        if self.order < 1:
            raise JetOrderError("cannot differentiate an order-0 jet")
        d = self.order
        n = np.arange(1, d + 1, dtype=float)
        if var == 0:
            c = self.coeffs[1:, :d] * n.reshape((d, 1) + (1,) * len(self.value_shape))
        elif var == 1:
            c = self.coeffs[:d, 1:] * n.reshape((1, d) + (1,) * len(self.value_shape))
        else:
            raise ValueError("var must be 0 or 1")
        return self._like(c, d - 1)

    def d(self) -> "Jet":
        return self.diff(0)

    def db(self) -> "Jet":
        return self.diff(1)

    def derivative(self, a: int, b: int) -> np.ndarray:
        """True mixed derivative d1^a d2^b at the base point."""
        return extract_derivative(self, a, b)

    def evaluate(self, du: complex, dv: complex) -> np.ndarray:
        """Sum the truncated series at offsets ``(du, dv)`` from the base point."""
        d = self.order
        pu = du ** np.arange(d + 1)
        pv = dv ** np.arange(d + 1)
        w = pu[:, None] * pv[None, :]
        return np.tensordot(w, self.coeffs, axes=([0, 1], [0, 1]))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0


def _bmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # both carry one leading batch axis; pad the lower-rank value right after it
    da, db = a.ndim, b.ndim
    if da > db:
        b = b.reshape(b.shape[:1] + (1,) * (da - db) + b.shape[1:])
    elif db > da:
        a = a.reshape(a.shape[:1] + (1,) * (db - da) + a.shape[1:])
    return a * b


def _bmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if b.ndim == 2:
        return (a @ b[..., None])[..., 0]
    return a @ b


@lru_cache(maxsize=None)
def _cauchy_index(order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flat indices ``(out, left, right)`` of every product term kept at this order."""
    w = order + 1
    io, ia, ib = [], [], []
    for i in range(w):
        for j in range(w - i):
            for a in range(i + 1):
                for b in range(j + 1):
                    io.append(i * w + j)
                    ia.append(a * w + b)
                    ib.append((i - a) * w + (j - b))
    return np.array(io), np.array(ia), np.array(ib)


def _cauchy(A: np.ndarray, B: np.ndarray, op: Callable) -> np.ndarray:
    d = A.shape[0] - 1
    io, ia, ib = _cauchy_index(d)
    w = d + 1
    Af = A.reshape((w * w,) + A.shape[2:])
    Bf = B.reshape((w * w,) + B.shape[2:])
    prod = op(Af[ia], Bf[ib])
    out = np.zeros((w * w,) + prod.shape[1:], dtype=complex)
    np.add.at(out, io, prod)
    return out.reshape((w, w) + prod.shape[1:])


# ---------------------------------------------------------------------------
# constructors

def seed_coordinate(base: complex, which: str, order: int, wirtinger: bool = True) -> Jet:
    """Jet of a coordinate function at ``base``.

    ``which`` is ``"xi"``/``"xibar"`` (or equivalently ``0``/``1``): the jet
    has value ``base`` and unit first derivative along that variable.
    """
    if order < 1:
        raise JetOrderError("seed order must be >= 1")
    var = {"xi": 0, "xibar": 1, 0: 0, 1: 1, "x+": 0, "x-": 1}[which]
    c = np.zeros((order + 1, order + 1), dtype=complex)
    c[0, 0] = base
    c[1 - var, var] = 1.0
    return Jet(c, order, wirtinger)


def constant(value, order: int, wirtinger: bool = True) -> Jet:
    arr = np.asarray(value, dtype=complex)
    c = np.zeros((order + 1, order + 1) + arr.shape, dtype=complex)
    c[0, 0] = arr
    return Jet(c, order, wirtinger)


def conjugate_jet(j: Jet) -> Jet:
    """Complex conjugate field; in Wirtinger mode this swaps the d and dbar roles."""
    return j.conj()


def jet_reciprocal(a: Jet) -> Jet:
    """Multiplicative inverse of a scalar jet."""
    if a.value_shape != ():
        raise TypeError("jet_reciprocal needs a scalar jet")
    a0 = complex(a.coeffs[0, 0])
    if abs(a0) <= 1e-12:
        raise SingularNormalization("singular normalization")
    # 1/(a0 + h) = (1/a0) * sum_n (-h/a0)^n, h nilpotent beyond the order
    h = (a - a0) * (-1.0 / a0)
    term = constant(1.0, a.order, a.wirtinger)
    acc = term
    for _ in range(a.order):
        term = term * h
        acc = acc + term
    return acc * (1.0 / a0)


def extract_derivative(j: Jet, a: int, b: int) -> np.ndarray:
    """Mixed derivative ``d^a dbar^b`` of the field at the base point."""
    if a < 0 or b < 0 or a + b > j.order:
        raise JetOrderError(f"derivative ({a},{b}) exceeds jet order {j.order}")
    return j.coeffs[a, b] * (_FACT[a] * _FACT[b])


def compose_univariate(j: Jet, derivs: Sequence[complex]) -> Jet:
    """Apply an analytic scalar function ``g`` to a scalar jet.

    ``derivs[n]`` must hold ``g^{(n)}`` at the jet's base value, for
    ``n = 0..order``.
    """
    if j.value_shape != ():
        raise TypeError("compose_univariate needs a scalar jet")
    if len(derivs) < j.order + 1:
        raise JetOrderError("not enough derivatives for the jet order")
    h = j - complex(j.coeffs[0, 0])
    term = constant(1.0, j.order, j.wirtinger)
    acc = term * derivs[0]
    for n in range(1, j.order + 1):
        term = term * h
        acc = acc + term * (derivs[n] / _FACT[n])
    return acc


def compose_linear(j: Jet, du: Jet, dv: Jet) -> Jet:
    """Re-expand ``j`` in new variables.

    ``du`` and ``dv`` are scalar jets (in the new variables, with zero value)
    giving the offsets of the old variables from their base point.  The
    result has the order and conjugation mode of ``du``.
    """
    if abs(du.coeffs[0, 0]) > 0 or abs(dv.coeffs[0, 0]) > 0:
        raise ValueError("offset jets must vanish at the base point")
    order = du.order
    out = None
    pu = constant(1.0, order, du.wirtinger)
    for a in range(j.order + 1):
        pv = constant(1.0, order, du.wirtinger)
        for b in range(j.order + 1 - a):
            mono = pu * pv
            term = mono * constant(j.coeffs[a, b], order, du.wirtinger)
            out = term if out is None else out + term
            pv = pv * dv
        pu = pu * du
    return out


def stack(jets: Sequence[Jet]) -> Jet:
    """Stack scalar (or equal-shape) jets into a jet with a new trailing axis."""
    first = jets[0]
    for other in jets[1:]:
        first._check(other)
    return first._like(np.stack([q.coeffs for q in jets], axis=-1))


def jet_expm(a: Jet, taylor_degree: int = 18) -> Jet:
    """Matrix exponential of a matrix jet by scaling and squaring in jet arithmetic."""
    norm = max(float(np.max(np.sum(np.abs(a.coeffs), axis=-2))) * (a.order + 1), 1e-300)
    s = max(0, int(math.ceil(math.log2(norm / 0.25))))
    x = a * (1.0 / 2 ** s)
    n = a.value_shape[-1]
    ident = constant(np.eye(n), a.order, a.wirtinger)
    acc = ident
    term = ident
    for k in range(1, taylor_degree + 1):
        term = (term @ x) * (1.0 / k)
        acc = acc + term
    for _ in range(s):
        acc = acc @ acc
    return acc
