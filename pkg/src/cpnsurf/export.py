"""su(N) coordinates, surface grids and file output.

Coordinates use the generalized Gell-Mann matrices ``lambda_a`` (Hermitian,
``tr(lambda_a lambda_b) = 2 delta_ab``) in this order:

1. symmetric ``E_jk + E_kj`` for ``j < k`` in lexicographic order,
2. antisymmetric ``-i(E_jk - E_kj)`` for ``j < k`` in the same order,
3. diagonal ``sqrt(2/(l(l+1))) (sum_{j<l} E_jj - l E_ll)`` for ``l = 1..N-1``.

The basis of su(N) is ``e_a = i lambda_a``, orthonormal for the Killing form
``(A, B) = -tr(AB)/2``, and ``x_a = (X, e_a)``.  For N = 2 this is the Pauli
order ``(sigma_x, sigma_y, sigma_z)``.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np

from .chain import HolomorphicCurve, build_chain
from .surfaces import surface_jet

__all__ = [
    "gell_mann_basis",
    "su_coordinates",
    "thread_cap",
    "surface_grid",
    "write_atomic",
    "rows_to_csv",
    "grid_to_csv",
    "grid_to_obj",
    "pca_preview_obj",
]


def gell_mann_basis(n: int) -> list[np.ndarray]:
    """Hermitian generalized Gell-Mann matrices in the documented order."""
    if n < 2:
        raise ValueError("n must be >= 2")
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    out = []
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = m[k, j] = 1
        out.append(m)
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k], m[k, j] = -1j, 1j
        out.append(m)
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1
        d[l] = -l
        out.append(np.diag(d * np.sqrt(2 / (l * (l + 1)))).astype(complex))
    return out


def su_coordinates(x: np.ndarray) -> np.ndarray:
    """Real coordinates ``x_a = -tr(X i lambda_a)/2`` of ``X`` in su(N)."""
    X = np.asarray(x, dtype=complex)
    basis = gell_mann_basis(X.shape[0])
    return np.array([(-0.5 * np.trace(X @ (1j * g))).real for g in basis])


def thread_cap() -> int:
    """Worker count from ``CPNSURF_THREADS`` (default: CPU count)."""
    raw = os.environ.get("CPNSURF_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"CPNSURF_THREADS must be a positive integer, got {raw!r}") from None
    if val < 1:
        raise ValueError(f"CPNSURF_THREADS must be a positive integer, got {raw!r}")
    return val


def _grid_points(center: complex, radius: float, resolution: int) -> list[complex]:
    if resolution < 2:
        raise ValueError("grid resolution must be >= 2")
    if not radius > 0:
        raise ValueError("grid radius must be positive")
    t = np.linspace(-radius, radius, resolution)
    return [complex(center.real + a, center.imag + b) for b in t for a in t]


def surface_grid(curve: HolomorphicCurve, k: int, center: complex = 0j, radius: float = 2.0,
                 resolution: int = 64, threads: int | None = None) -> tuple[list[complex], np.ndarray]:
    """``X_k`` on a square ``resolution x resolution`` grid; row-major in ``(Im xi, Re xi)``.

    Returns the grid points and an array of shape ``(resolution**2, N, N)``.
    """
    pts = _grid_points(center, radius, resolution)

    def one(xi):
        return surface_jet(build_chain(curve, xi, order=0), k).value

    workers = thread_cap() if threads is None else threads
    if workers <= 1:
        xs = [one(p) for p in pts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            xs = list(ex.map(one, pts, chunksize=64))
    return pts, np.array(xs)


def write_atomic(path: str, text: str) -> None:
    """Write to a temporary file in the same directory, then rename over ``path``."""
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
    return buf.getvalue()


def grid_to_csv(points: Iterable[complex], xs: np.ndarray) -> str:
    n = xs.shape[1]
    cols = ["re_xi", "im_xi"] + [f"x{a + 1}" for a in range(n * n - 1)]
    rows = []
    for p, x in zip(points, xs):
        row = {"re_xi": p.real, "im_xi": p.imag}
        row.update({f"x{a + 1}": float(v) for a, v in enumerate(su_coordinates(x))})
        rows.append(row)
    return rows_to_csv(rows, cols)


def _obj(verts: np.ndarray, resolution: int, header: str) -> str:
    lines = [f"# {header}"]
    lines += [f"v {a!r} {b!r} {c!r}" for a, b, c in verts]
    r = resolution
    for i in range(r - 1):
        for j in range(r - 1):
            v00 = i * r + j + 1
            v01, v10, v11 = v00 + 1, v00 + r, v00 + r + 1
            lines.append(f"f {v00} {v01} {v11}")
            lines.append(f"f {v00} {v11} {v10}")
    return "\n".join(lines) + "\n"


def grid_to_obj(xs: np.ndarray, resolution: int) -> str:
    """Triangulated mesh of an su(2) surface in its three real coordinates."""
    if xs.shape[1] != 2:
        raise ValueError("OBJ export is only defined for N = 2")
    verts = np.array([su_coordinates(x) for x in xs])
    return _obj(verts, resolution, "su(2) surface, Pauli coordinates")


def pca_preview_obj(xs: np.ndarray, resolution: int) -> str:
    """Projection of an su(N) surface onto its top three principal axes.

    A preview only: distances are not preserved.
    """
    coords = np.array([su_coordinates(x) for x in xs])
    centered = coords - coords.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    verts = centered @ vt[:3].T
    if verts.shape[1] < 3:
        verts = np.pad(verts, ((0, 0), (0, 3 - verts.shape[1])))
    return _obj(verts, resolution, "PCA PROJECTION of su(N) coordinates; preview only, not an embedding")
