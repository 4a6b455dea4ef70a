"""Chains of rank-1 Hermitian projectors generated from a holomorphic curve.

Starting from a holomorphic vector ``f_0(xi)`` the raising recurrence
``f_{k+1} = (I - P_k) d f_k`` produces ``N`` mutually orthogonal rank-1
projectors ``P_k = f_k f_k^dagger / (f_k^dagger f_k)`` that each solve the
CP^{N-1} Euler-Lagrange equation.  All fields are carried as Wirtinger jets so
that derivatives at the base point are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt
from typing import Sequence

import numpy as np

from .jets import Jet, SingularNormalization, constant, seed_coordinate
from .linalg import commutator, dagger, frob

__all__ = [
    "HolomorphicCurve",
    "ProjectorChain",
    "CurveNotFullRank",
    "veronese_curve",
    "polynomial_curve",
    "vector_norm2",
    "projector_from_vector",
    "raise_vector",
    "lower_vector",
    "build_chain",
    "constant_chain",
    "chain_from_projectors",
    "el_residual",
    "conservation_residual",
    "lagrangian_density",
    "sheet_constants",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 3


class CurveNotFullRank(ValueError):
    """The raising recurrence produced a zero vector before reaching P_{N-1}."""


def sheet_constants(n: int) -> list[float]:
    """The trace-fixing constants ``c_k = (1 + 2k) / N``."""
    return [(1 + 2 * k) / n for k in range(n)]


@dataclass(frozen=True)
class HolomorphicCurve:
    """Polynomial vector ``f_0(xi)``; ``coefficients[j][p]`` multiplies ``xi**p``
    in component ``j``.

    ``antiholomorphic=True`` evaluates every polynomial at ``conj(xi)`` instead;
    this is only meant for negative controls.
    """

    coefficients: tuple
    antiholomorphic: bool = False

    def __post_init__(self):
        coeffs = tuple(np.atleast_1d(np.asarray(c, dtype=complex)) for c in self.coefficients)
        if len(coeffs) < 2:
            raise ValueError("n must be >= 2")
        if all(not np.any(c) for c in coeffs):
            raise ValueError("holomorphic curve is identically zero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def max_degree(self) -> int:
        return max(len(c) for c in self.coefficients) - 1

    def evaluate(self, xi: complex) -> np.ndarray:
        z = np.conj(xi) if self.antiholomorphic else xi
        return np.array([np.polynomial.polynomial.polyval(z, c) for c in self.coefficients])

    def derivative(self, xi: complex, m: int) -> np.ndarray:
        """``d^m f_0`` at ``xi`` (holomorphic curves only)."""
        out = []
        for c in self.coefficients:
            dc = np.polynomial.polynomial.polyder(c, m) if m else c
            out.append(np.polynomial.polynomial.polyval(xi, dc) if dc.size else 0.0)
        return np.array(out, dtype=complex)

    def jet(self, xi0: complex, order: int) -> Jet:
        var = "xibar" if self.antiholomorphic else "xi"
        base = np.conj(xi0) if self.antiholomorphic else xi0
        z = seed_coordinate(base, var, order)
        comps = []
        for c in self.coefficients:
            acc = constant(0.0, order)
            for p in reversed(range(len(c))):  # Horner
                acc = acc * z + c[p]
            comps.append(acc.coeffs)
        return Jet(np.stack(comps, axis=-1), order)

    def translated(self, shift: complex) -> "HolomorphicCurve":
        """The curve ``xi -> f_0(xi + shift)``."""
        P = np.polynomial.Polynomial
        out = []
        for c in self.coefficients:
            p = P(c)(P([shift, 1.0]))
            out.append(p.coef)
        return HolomorphicCurve(tuple(out), self.antiholomorphic)


def veronese_curve(n: int) -> HolomorphicCurve:
    """Components ``sqrt(binom(n-1, j)) * xi**j``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    coeffs = []
    for j in range(n):
        c = np.zeros(j + 1, dtype=complex)
        c[j] = sqrt(comb(n - 1, j))
        coeffs.append(c)
    return HolomorphicCurve(tuple(coeffs))


def polynomial_curve(coefficients: Sequence[Sequence[complex]]) -> HolomorphicCurve:
    return HolomorphicCurve(tuple(coefficients))


# ---------------------------------------------------------------------------
# jet-level building blocks

def vector_norm2(f: Jet) -> Jet:
    """``f^dagger f`` as a scalar jet."""
    prod = f.conj() * f
    return Jet(prod.coeffs.sum(axis=-1), prod.order, prod.wirtinger)


def projector_from_vector(f: Jet) -> Jet:
    """``P = f (x) f^dagger / (f^dagger f)`` for a vector jet ``f``."""
    norm = vector_norm2(f)
    if abs(norm.coeffs[0, 0]) <= 1e-12:
        raise SingularNormalization("singular normalization")
    col = Jet(f.coeffs[..., :, None], f.order, f.wirtinger)
    row = Jet(f.conj().coeffs[..., None, :], f.order, f.wirtinger)
    return (col * row) / norm


def raise_vector(f: Jet, P: Jet) -> Jet:
    """``(I - P) d f``; the jet order drops by one."""
    if f.order < 1:
        raise ValueError("insufficient jet order for raise")
    df = f.d()
    Pt = P.truncate(df.order)
    return df - Pt @ df


def lower_vector(f: Jet, P: Jet) -> Jet:
    """``(I - P) dbar f``; the jet order drops by one."""
    if f.order < 1:
        raise ValueError("insufficient jet order for lower")
    df = f.db()
    Pt = P.truncate(df.order)
    return df - Pt @ df


@dataclass(frozen=True)
class ProjectorChain:
    n: int
    base_point: complex
    projs: tuple
    c: tuple = field(default=())
    termination: float = 0.0

    def __post_init__(self):
        if not self.c:
            object.__setattr__(self, "c", tuple(sheet_constants(self.n)))

    @property
    def order(self) -> int:
        return self.projs[0].order

    def P(self, k: int, a: int = 0, b: int = 0) -> np.ndarray:
        """``d^a dbar^b P_k`` at the base point."""
        return self.projs[k].derivative(a, b)

    def lower_sum(self, k: int, a: int = 0, b: int = 0) -> np.ndarray:
        """``sum_{j<k} d^a dbar^b P_j`` at the base point."""
        out = np.zeros((self.n, self.n), dtype=complex)
        for j in range(k):
            out += self.P(j, a, b)
        return out

    def axiom_residuals(self) -> dict:
        """Residuals of the five projector axioms at the base point."""
        n = self.n
        eye = np.eye(n)
        vals = [self.P(k) for k in range(self.n)]
        idem = max(frob(p @ p - p) for p in vals)
        herm = max(frob(p - dagger(p)) for p in vals)
        tr1 = max(abs(np.trace(p) - 1.0) for p in vals)
        orth = 0.0
        for l in range(n):
            for k in range(n):
                target = vals[k] if l == k else np.zeros((n, n))
                orth = max(orth, frob(vals[l] @ vals[k] - target))
        complete = frob(sum(vals) - eye)
        return {"idempotent": idem, "hermitian": herm, "trace": tr1,
                "orthogonal": orth, "complete": complete}


def build_chain(curve: HolomorphicCurve, xi0: complex, order: int = DEFAULT_ORDER) -> ProjectorChain:
    """All ``N`` projector jets of the chain at ``xi0``, truncated to ``order``.

    ``f_0`` is seeded at order ``order + N - 1`` since every raise consumes one
    order.
    """
    n = curve.n
    f = curve.jet(xi0, order + n - 1)
    if np.sqrt(abs(vector_norm2(f).coeffs[0, 0])) < 1e-12:
        raise SingularNormalization(f"singular normalization at xi={xi0!r}; resample")
    projs = []
    for k in range(n):
        nrm = vector_norm2(f).coeffs[0, 0].real
        if nrm <= 1e-24:
            raise CurveNotFullRank(f"curve not full rank: f_{k} vanishes at xi={xi0!r}")
        P = projector_from_vector(f)
        projs.append(P.truncate(order))
        if k < n - 1:
            f = raise_vector(f, P)
    # the chain must terminate: the next raise is the zero vector
    scale = np.sqrt(vector_norm2(f).coeffs[0, 0].real)
    tail = raise_vector(f, P) if f.order >= 1 else None
    term = 0.0 if tail is None else float(np.linalg.norm(tail.value)) / max(1.0, scale)
    if term > 1e-8:
        raise CurveNotFullRank(f"curve not full rank: chain does not terminate (residual {term:.3e})")
    return ProjectorChain(n, complex(xi0), tuple(projs), termination=term)


def chain_from_projectors(projs: Sequence[Jet], base_point: complex = 0.0) -> ProjectorChain:
    """Wrap externally constructed projector jets (used for controls)."""
    return ProjectorChain(projs[0].value_shape[0], complex(base_point), tuple(projs))


def constant_chain(n: int, order: int = DEFAULT_ORDER, unitary: np.ndarray | None = None) -> ProjectorChain:
    """Chain of constant projectors ``U E_kk U^dagger`` with all derivatives zero."""
    U = np.eye(n) if unitary is None else np.asarray(unitary, dtype=complex)
    projs = []
    for k in range(n):
        E = np.zeros((n, n), dtype=complex)
        E[k, k] = 1.0
        projs.append(constant(U @ E @ dagger(U), order))
    return ProjectorChain(n, 0j, tuple(projs))


# ---------------------------------------------------------------------------
# field equations

def el_residual(chain: ProjectorChain, k: int) -> float:
    """``||[d dbar P_k, P_k]||_F`` at the base point."""
    return frob(commutator(chain.P(k, 1, 1), chain.P(k)))


def conservation_residual(chain: ProjectorChain, k: int) -> float:
    """``||d[dbar P_k, P_k] + dbar[d P_k, P_k]||_F`` evaluated through the jets."""
    P = chain.projs[k]
    Pt = P.truncate(P.order - 1)
    A = P.db() @ Pt - Pt @ P.db()
    B = P.d() @ Pt - Pt @ P.d()
    return frob(A.derivative(1, 0) + B.derivative(0, 1))


def lagrangian_density(chain: ProjectorChain, k: int) -> float:
    """``tr(d P_k dbar P_k)``; real and nonnegative for these models."""
    val = np.trace(chain.P(k, 1, 0) @ chain.P(k, 0, 1))
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ArithmeticError(f"Lagrangian density has imaginary part {val.imag:.3e}")
    return float(val.real)
