"""Generalized Weierstrass immersions ``X_k`` of a projector chain in su(N)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chain import ProjectorChain, sheet_constants
from .jets import Jet, constant
from .linalg import (commutator, dagger, frob, hermitian_eigenvalues,
                     matrix_poly_residual, rel_residual, su_defect)
from .words import claim_residual, parse_word, WordClaim

__all__ = [
    "SurfaceSample",
    "NotASurfacePoint",
    "surface_jet",
    "weierstrass_surface",
    "projector_from_surface",
    "tangents_two_ways",
    "linear_dependence_check",
    "minimal_poly_roots",
    "printed_minimal_poly_roots",
    "killing_closed_form",
    "surface_el_residual",
    "tangent_self_identity",
    "WordSpec",
    "property_word_checks",
    "power_formula",
]


class NotASurfacePoint(ValueError):
    """The matrix does not satisfy the minimal polynomial of its sheet."""


@dataclass(frozen=True)
class SurfaceSample:
    """Value and derivatives (up to second order) of an immersion at one point.

    ``p`` is the projector ``P_k`` at the same point; it is kept because many
    of the surface identities are stated in terms of both.
    """

    k: int
    n: int
    x: np.ndarray
    dx: np.ndarray
    dbx: np.ndarray
    d2x: np.ndarray
    dbdx: np.ndarray
    db2x: np.ndarray
    base_point: complex
    p: np.ndarray | None = None

    @property
    def c(self) -> float:
        return (1 + 2 * self.k) / self.n

    def letters(self) -> dict:
        out = {"X": self.x, "dX": self.dx, "dbX": self.dbx,
               "d2X": self.d2x, "ddbX": self.dbdx, "db2X": self.db2x}
        if self.p is not None:
            out["P"] = self.p
        return out

    def check(self, tol: float = 1e-9) -> dict:
        ah, tr = su_defect(self.x)
        reality = frob(dagger(self.dx) + self.dbx)
        return {"antihermitian": ah, "trace": tr, "reality": reality,
                "ok": ah <= tol and tr <= tol and reality <= tol}


def surface_jet(chain: ProjectorChain, k: int) -> Jet:
    """``X_k = i c_k I - i P_k - 2i sum_{j<k} P_j`` as a jet."""
    n = chain.n
    X = constant((1j * chain.c[k]) * np.eye(n), chain.order) - 1j * chain.projs[k]
    for j in range(k):
        X = X - 2j * chain.projs[j]
    return X


def weierstrass_surface(chain: ProjectorChain, k: int) -> SurfaceSample:
    if chain.order < 2:
        raise ValueError("weierstrass_surface needs jets of order >= 2")
    X = surface_jet(chain, k)
    g = X.derivative
    return SurfaceSample(k, chain.n, g(0, 0), g(1, 0), g(0, 1), g(2, 0), g(1, 1), g(0, 2),
                         chain.base_point, chain.P(k))


def minimal_poly_roots(k: int, n: int) -> list[complex]:
    """Roots of the minimal polynomial of ``X_k``, i.e. its spectrum.

    Holomorphic sheet: ``{i c, i(c-1)}``; mixed: ``{i c, i(c-1), i(c-2)}``;
    anti-holomorphic (k = N-1): ``{i(c-1), i(c-2)}``.
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"sheet index {k} out of range for N={n}")
    c = (1 + 2 * k) / n
    if k == 0:
        return [1j * c, 1j * (c - 1)]
    if k == n - 1:
        return [1j * (c - 1), 1j * (c - 2)]
    return [1j * c, 1j * (c - 1), 1j * (c - 2)]


def printed_minimal_poly_roots(n: int) -> list[complex]:
    """The anti-holomorphic factorization exactly as printed: ``{-i c, -i(c-1)}``.

    Kept for reporting; it does not annihilate ``X_{N-1}``.
    """
    c = (2 * n - 1) / n
    return [-1j * c, -1j * (c - 1)]


def projector_from_surface(x, k: int, n: int, tol: float = 1e-8) -> np.ndarray:
    """Recover ``P_k = X_k^2 - 2i(c_k - 1) X_k - c_k (c_k - 2) I``."""
    X = np.asarray(x, dtype=complex)
    res = matrix_poly_residual(X, minimal_poly_roots(k, n))
    if res > tol:
        raise NotASurfacePoint(f"not a CP^{n - 1} surface point (minimal polynomial residual {res:.3e})")
    c = (1 + 2 * k) / n
    return X @ X - 2j * (c - 1) * X - c * (c - 2) * np.eye(n)


def tangents_two_ways(chain: ProjectorChain, k: int) -> tuple[tuple, tuple]:
    """``(dX, dbX)`` from the closed-form sums and from the commutator form."""
    P, dP, dbP = chain.P(k), chain.P(k, 1, 0), chain.P(k, 0, 1)
    by_sum = (-1j * dP - 2j * chain.lower_sum(k, 1, 0),
              -1j * dbP - 2j * chain.lower_sum(k, 0, 1))
    by_comm = (-1j * commutator(dP, P), 1j * commutator(dbP, P))
    return by_sum, by_comm


def linear_dependence_check(samples: Sequence[SurfaceSample]) -> tuple[float, float]:
    """Residuals of ``sum (-1)^k X_k = 0`` and ``sum X_k = 2i sum (k-(N-1)/2) P_k``."""
    n = samples[0].n
    if len(samples) != n:
        raise ValueError("need one sample per sheet")
    ss = sorted(samples, key=lambda s: s.k)
    alt = sum(((-1) ** s.k) * s.x for s in ss)
    total = sum(s.x for s in ss)
    rhs = 2j * sum((s.k - (n - 1) / 2) * s.p for s in ss)
    return frob(alt), rel_residual(total, rhs)


def killing_closed_form(k: int, m: int, n: int) -> float:
    """Closed-form ``(X_k, X_m)``; symmetric in ``k, m``."""
    if m < k:
        k, m = m, k
    c = sheet_constants(n)
    if m > k:
        return n * c[k] * (2 - c[m]) / 2
    return n * c[k] * (2 - c[k]) / 2 - 0.5


def surface_el_residual(sample: SurfaceSample) -> float:
    return frob(commutator(sample.dbdx, sample.x))


def tangent_self_identity(sample: SurfaceSample) -> tuple[float, float]:
    """Residuals of ``dX = i[dX, X]`` and ``dbX = -i[dbX, X]``."""
    r1 = frob(sample.dx - 1j * commutator(sample.dx, sample.x))
    r2 = frob(sample.dbx + 1j * commutator(sample.dbx, sample.x))
    return r1, r2


def spectrum(sample: SurfaceSample) -> list[float]:
    """Eigenvalues of the Hermitian matrix ``i X_k``; ``X_k`` has spectrum ``-i`` times these."""
    return hermitian_eigenvalues(1j * sample.x)


# ---------------------------------------------------------------------------
# word identities

@dataclass(frozen=True)
class WordSpec:
    """Descriptor for one surface word identity.

    kinds:
      ``trace_zero`` / ``product_zero`` / ``shift`` -- as in :class:`words.WordClaim`;
      ``power_d`` / ``power_db`` -- ``dX dX X^n`` (resp. dbar) against its closed form;
      ``power_mixed`` / ``power_mixed_rev`` -- ``(dX dbX)^m X^n`` (resp. reversed).
    """

    kind: str
    word: tuple = ()
    m: int = 1
    n: int = 1
    max_len: int = 8


def power_formula(sample: SurfaceSample, kind: str, m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(left side, closed-form right side) of the identical/mixed derivative power formulas."""
    X, dX, dbX = sample.x, sample.dx, sample.dbx
    c = sample.c
    alpha, beta, gamma = 1j * (c - 1), 1j * c, 1j * (c - 2)
    Xn = np.linalg.matrix_power(X, n)
    if kind == "power_d":
        W = dX @ dX
        return W @ Xn, (1j ** n) * (c - 2) ** n * W
    if kind == "power_db":
        W = dbX @ dbX
        return W @ Xn, (1j ** n) * c ** n * W
    if kind == "power_mixed":
        W = np.linalg.matrix_power(dX @ dbX, m)
        other = beta
    elif kind == "power_mixed_rev":
        W = np.linalg.matrix_power(dbX @ dX, m)
        other = gamma
    else:
        raise ValueError(f"malformed word descriptor: unknown kind {kind!r}")
    rhs = ((alpha ** n - other ** n) * (W @ X @ X - 2 * alpha * W @ X)
           + (other ** n + 1j * c * gamma * (alpha ** n - other ** n)) * W)
    return W @ Xn, rhs


def property_word_checks(sample: SurfaceSample, desc: WordSpec) -> float:
    """Residual of one word identity for the surface sample."""
    if desc.kind.startswith("power_"):
        if desc.m < 1 or desc.n < 0:
            raise ValueError("malformed word descriptor: need m >= 1, n >= 0")
        lhs, rhs = power_formula(sample, desc.kind, desc.m, desc.n)
        return rel_residual(lhs, rhs)
    tokens = parse_word(desc.word)
    if len(tokens) > desc.max_len:
        raise ValueError(f"malformed word descriptor: length {len(tokens)} > {desc.max_len}")
    return claim_residual(WordClaim(desc.kind, tokens, ""), sample.letters())
