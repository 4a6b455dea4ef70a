"""Dense complex matrix helpers and su(N) predicates."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

__all__ = [
    "TOL_SU",
    "MAX_DIM",
    "DimensionError",
    "NotHermitianError",
    "NotSuError",
    "ExpOverflowError",
    "as_cmatrix",
    "frob",
    "rel_residual",
    "dagger",
    "commutator",
    "anticommutator",
    "su_defect",
    "is_su",
    "killing_inner",
    "matrix_exp",
    "hermitian_eig",
    "hermitian_eigenvalues",
    "matrix_poly_residual",
]

TOL_SU = 1e-10
MAX_DIM = 12
EXP_NORM_BOUND = 700.0


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class NotSuError(ValueError):
    pass


class ExpOverflowError(OverflowError):
    pass


def as_cmatrix(a) -> np.ndarray:
    """Square complex array of dimension at most ``MAX_DIM`` with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise DimensionError(f"dimension {m.shape[0]} exceeds cap {MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def frob(a) -> float:
    return float(np.linalg.norm(a))


def rel_residual(lhs, rhs) -> float:
    """``||lhs - rhs||_F / max(1, ||rhs||_F)``."""
    return frob(np.asarray(lhs) - np.asarray(rhs)) / max(1.0, frob(rhs))


def dagger(a) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def _same_dim(a, b):
    if np.shape(a) != np.shape(b):
        raise DimensionError(f"dimension mismatch: {np.shape(a)} vs {np.shape(b)}")


def commutator(a, b) -> np.ndarray:
    _same_dim(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    _same_dim(a, b)
    return a @ b + b @ a


def su_defect(m) -> tuple[float, float]:
    """(anti-Hermiticity defect, |trace|) of ``m``."""
    m = np.asarray(m)
    return frob(m + dagger(m)), float(abs(np.trace(m)))


def is_su(m, tol: float = TOL_SU) -> bool:
    ah, tr = su_defect(m)
    return ah <= tol and tr <= tol


def killing_inner(a, b, tol: float = TOL_SU) -> float:
    """Killing-form inner product ``-1/2 tr(a b)`` on su(N)."""
    _same_dim(a, b)
    t = np.trace(np.asarray(a) @ np.asarray(b))
    if abs(t.imag) > tol * max(1.0, abs(t.real)):
        raise NotSuError(f"tr(ab) has imaginary part {t.imag:.3e}; arguments not in su(N)")
    return -0.5 * float(t.real)


# Pade(13) coefficients and the scaling threshold of Higham (2005)
_PADE13 = (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
           1187353796428800.0, 129060195264000.0, 10559470521600.0,
           670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
           960960.0, 16380.0, 182.0, 1.0)
_THETA13 = 5.371920351148152


def matrix_exp(a, norm_bound: float = EXP_NORM_BOUND) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a [13/13] Pade approximant."""
    A = as_cmatrix(a)
    n = A.shape[0]
    nrm = float(np.max(np.sum(np.abs(A), axis=0))) if n else 0.0
    if nrm > norm_bound:
        raise ExpOverflowError(f"||a||_1 = {nrm:.3g} exceeds bound {norm_bound}")
    s = 0 if nrm <= _THETA13 else int(math.ceil(math.log2(nrm / _THETA13)))
    A = A / (2.0 ** s)
    b = _PADE13
    I = np.eye(n, dtype=complex)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
             + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I)
    V = A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R


def hermitian_eig(a, tol: float = TOL_SU, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, V)`` with ``w`` ascending and ``a @ V[:, i] = w[i] V[:, i]``.
    """
    A = as_cmatrix(a)
    if frob(A - dagger(A)) > tol * max(1.0, frob(A)):
        raise NotHermitianError("input is not Hermitian")
    A = 0.5 * (A + dagger(A))
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(frob(A), 1e-300)
    for _ in range(max_sweeps):
        off = frob(A - np.diag(np.diag(A)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                theta = 0.5 * math.atan2(2.0 * r, (A[q, q] - A[p, p]).real)
                c, s = math.cos(theta), math.sin(theta)
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                G = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = dagger(G) @ A[idx, :]
                V[:, idx] = V[:, idx] @ G
                A[p, q] = A[q, p] = 0.0
    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def hermitian_eigenvalues(a, tol: float = TOL_SU) -> list[float]:
    w, _ = hermitian_eig(a, tol)
    return [float(x) for x in w]


def matrix_poly_residual(x, roots: Sequence[complex]) -> float:
    """``||prod_j (x - root_j I)||_F``."""
    X = np.asarray(x, dtype=complex)
    I = np.eye(X.shape[0])
    acc = I.astype(complex)
    for r in roots:
        acc = acc @ (X - r * I)
    return frob(acc)
