"""Real symmetric matrix backend.

Elements are stored packed: upper triangle, row-major, so an n x n symmetric
matrix occupies n*(n+1)//2 coordinates.  The eigensolver is a hand-written
cyclic Jacobi sweep with a threshold: deterministic for a fixed input (fixed
sweep order, no pivot search randomness) and accurate at the sizes used here
(n <= 64 for algebra elements, up to a few hundred for quadrature rules).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elements import (
    AlgebraDescriptor,
    AlgebraKind,
    JordanElement,
    ScalarFunction,
    check_domain,
)
from .errors import ConsistencyError, InvalidElementError

__all__ = [
    "pack",
    "unpack",
    "sym_element",
    "dense_from_element",
    "EigenFrame",
    "jacobi_eigh",
    "sym_eigen",
    "sym_product",
    "matrix_apply",
    "matrix_from_dense_rows",
]

# Off-diagonal Frobenius mass must fall below this fraction of the input scale.
JACOBI_RELTOL = 1e-14
JACOBI_MAX_SWEEPS = 60

# Dense input acceptance: relative asymmetry above this is rejected.
DENSE_ASYM_RELTOL = 1e-12


def _upper_indices(n: int):
    return np.triu_indices(n)


def pack(dense: np.ndarray) -> np.ndarray:
    """Upper triangle, row-major, of a symmetric dense matrix."""
    n = dense.shape[0]
    iu, ju = _upper_indices(n)
    return np.ascontiguousarray(dense[iu, ju], dtype=np.float64)


def unpack(coords: np.ndarray, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.float64)
    iu, ju = _upper_indices(n)
    m[iu, ju] = coords
    m[ju, iu] = coords
    return m


def sym_element(dense: np.ndarray) -> JordanElement:
    """Element from a dense symmetric array (symmetrized exactly by averaging)."""
    dense = np.asarray(dense, dtype=np.float64)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise InvalidElementError(f"expected a square matrix, got shape {dense.shape}")
    sym = (dense + dense.T) / 2.0
    alg = AlgebraDescriptor(AlgebraKind.SYM, dense.shape[0])
    return JordanElement(alg, pack(sym))


def matrix_from_dense_rows(rows) -> JordanElement:
    """Accept the {"matrix": [[...], ...]} interchange form.

    Rejects non-square input and relative asymmetry beyond 1e-12.
    """
    try:
        dense = np.asarray(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidElementError(f"matrix rows are not numeric: {exc}") from exc
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise InvalidElementError(f"'matrix' must be square, got shape {dense.shape}")
    if not np.all(np.isfinite(dense)):
        raise InvalidElementError("matrix entries must be finite")
    scale = float(np.max(np.abs(dense))) if dense.size else 0.0
    asym = float(np.max(np.abs(dense - dense.T))) if dense.size else 0.0
    if asym > DENSE_ASYM_RELTOL * max(scale, 1e-300):
        raise InvalidElementError(
            f"matrix is not symmetric: max |a - a^T| = {asym!r} exceeds "
            f"{DENSE_ASYM_RELTOL} * {scale!r}"
        )
    return sym_element(dense)


def dense_from_element(x: JordanElement) -> np.ndarray:
    return unpack(x.coords, x.algebra.dim)


@dataclass(frozen=True)
class EigenFrame:
    """Spectral factorization x = frame @ diag(eigenvalues) @ frame.T.

    ``eigenvalues`` are ascending; ties keep the order the sweep produced.
    """

    eigenvalues: np.ndarray
    frame: np.ndarray


def jacobi_eigh(dense: np.ndarray) -> EigenFrame:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps the strict upper triangle in row-major order, rotating away every
    entry above the sweep threshold, until the off-diagonal Frobenius mass is
    below JACOBI_RELTOL relative to the spectral scale of the input
    (frobenius/sqrt(n) lower-bounds the spectral radius, so the stop rule is
    conservative).
    """
    a = np.array(dense, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return EigenFrame(a.ravel().copy(), v)

    fro = math.sqrt(float(np.sum(a * a)))
    if fro == 0.0:
        return EigenFrame(np.zeros(n), v)
    # off-diagonal mass target; fro/sqrt(n) <= spectral radius <= fro
    off_target = JACOBI_RELTOL * fro / math.sqrt(n)
    skip_below = off_target / (10.0 * n)

    iu_strict = np.triu_indices(n, 1)

    def off_mass() -> float:
        upper = a[iu_strict]
        return math.sqrt(2.0 * float(np.dot(upper, upper)))

    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        if off_mass() <= off_target:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip_below:
                    continue
                # symmetric Schur 2x2: pick the rotation annihilating a[p,q]
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- J^T A J on rows/cols p, q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcol_p = v[:, p].copy()
                vcol_q = v[:, q].copy()
                v[:, p] = c * vcol_p - s * vcol_q
                v[:, q] = s * vcol_p + c * vcol_q
    if not converged and off_mass() > off_target:
        raise ConsistencyError(
            f"jacobi sweep did not converge in {JACOBI_MAX_SWEEPS} sweeps (n={n})"
        )

    diag = np.diag(a).copy()
    order = np.argsort(diag, kind="stable")
    return EigenFrame(diag[order], np.ascontiguousarray(v[:, order]))


# Spectral factorizations are reused heavily (bound chains evaluate many
# functions of the same inner element), so cache by coordinate bytes.
_EIG_CACHE: dict = {}
_EIG_CACHE_MAX = 4096


def sym_eigen(x: JordanElement) -> EigenFrame:
    key = x.cache_key
    hit = _EIG_CACHE.get(key)
    if hit is not None:
        return hit
    ef = jacobi_eigh(unpack(x.coords, x.algebra.dim))
    if len(_EIG_CACHE) >= _EIG_CACHE_MAX:
        _EIG_CACHE.clear()
    _EIG_CACHE[key] = ef
    return ef


def sym_product(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Packed Jordan product (XY + YX)/2 of packed operands."""
    dx = unpack(x, n)
    dy = unpack(y, n)
    return pack((dx @ dy + dy @ dx) / 2.0)


def sym_quad_coords(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Packed {A B A} = A B A; associativity makes the quadratic map a triple product."""
    da = unpack(a, n)
    db = unpack(b, n)
    m = da @ db @ da
    return pack((m + m.T) / 2.0)


def matrix_apply(x: JordanElement, f: ScalarFunction) -> JordanElement:
    """f(x) = frame @ diag(f(eigenvalues)) @ frame.T after a domain check."""
    ef = sym_eigen(x)
    w = ef.eigenvalues
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    check_domain(f, w, scale)
    values = np.array([f(float(t)) for t in w], dtype=np.float64)
    m = (ef.frame * values) @ ef.frame.T
    return JordanElement(x.algebra, pack((m + m.T) / 2.0))
