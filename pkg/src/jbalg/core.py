"""Backend-independent Jordan operations.

``jordan_product`` dispatches on the algebra kind; ``quad_map`` is the
quadratic representation U_a(b) = {a b a} = 2 (a o b) o a - a^2 o b.  For the
symmetric backend the associative envelope collapses it to the triple matrix
product a b a (the general formula is kept as a tested identity).  ``jb_norm``
is the spectral radius, which in a JB-algebra is the complete algebra norm.
"""

from __future__ import annotations

import math

import numpy as np

from . import albert as _albert
from . import spin as _spin
from . import symmetric as _sym
from .elements import (
    ALBERT_COORDS,
    AlgebraDescriptor,
    AlgebraKind,
    JordanElement,
    require_same_algebra,
)
from .errors import InvalidElementError

__all__ = [
    "identity",
    "zero",
    "jordan_product",
    "quad_map",
    "quad_map_polarized",
    "affine",
    "jb_norm",
    "coords_allclose",
]


def identity(algebra: AlgebraDescriptor) -> JordanElement:
    if algebra.kind is AlgebraKind.SYM:
        return JordanElement(algebra, _sym.pack(np.eye(algebra.dim)))
    if algebra.kind is AlgebraKind.SPIN:
        coords = np.zeros(algebra.coord_count)
        coords[0] = 1.0
        return JordanElement(algebra, coords)
    coords = np.zeros(ALBERT_COORDS)
    coords[0] = coords[1] = coords[2] = 1.0
    return JordanElement(algebra, coords)


def zero(algebra: AlgebraDescriptor) -> JordanElement:
    return JordanElement(algebra, np.zeros(algebra.coord_count))


def jordan_product(x: JordanElement, y: JordanElement) -> JordanElement:
    require_same_algebra(x, y)
    kind = x.algebra.kind
    if kind is AlgebraKind.SYM:
        coords = _sym.sym_product(x.coords, y.coords, x.algebra.dim)
    elif kind is AlgebraKind.SPIN:
        coords = _spin.spin_product(x.coords, y.coords)
    else:
        coords = _albert.albert_product_coords(x.coords, y.coords)
    return JordanElement(x.algebra, coords)


def quad_map_polarized(a: JordanElement, b: JordanElement) -> JordanElement:
    """{a b a} through the defining identity 2 (a o b) o a - a^2 o b."""
    require_same_algebra(a, b)
    ab = jordan_product(a, b)
    aba = jordan_product(ab, a)
    a2 = jordan_product(a, a)
    a2b = jordan_product(a2, b)
    return JordanElement(a.algebra, 2.0 * aba.coords - a2b.coords)


def quad_map(a: JordanElement, b: JordanElement) -> JordanElement:
    """Quadratic representation U_a(b) = {a b a}."""
    require_same_algebra(a, b)
    if a.algebra.kind is AlgebraKind.SYM:
        return JordanElement(
            a.algebra, _sym.sym_quad_coords(a.coords, b.coords, a.algebra.dim)
        )
    return quad_map_polarized(a, b)


def affine(x: JordanElement, y: JordanElement, s: float, t: float) -> JordanElement:
    require_same_algebra(x, y)
    s = float(s)
    t = float(t)
    if not (math.isfinite(s) and math.isfinite(t)):
        raise InvalidElementError(f"affine weights must be finite, got {s!r}, {t!r}")
    return JordanElement(x.algebra, s * x.coords + t * y.coords)


def jb_norm(x: JordanElement) -> float:
    """Spectral radius max |lambda| = the JB norm of x."""
    kind = x.algebra.kind
    if kind is AlgebraKind.SYM:
        w = _sym.sym_eigen(x).eigenvalues
        return float(np.max(np.abs(w)))
    if kind is AlgebraKind.SPIN:
        lo, hi = _spin.spin_spectrum_pair(x)
        return max(abs(lo), abs(hi))
    roots = _albert.albert_roots(x)
    return float(np.max(np.abs(roots)))


def coords_allclose(x: JordanElement, y: JordanElement, tol: float) -> bool:
    """Tolerance comparison of coordinates; a test helper, never an algorithm."""
    require_same_algebra(x, y)
    scale = 1.0 + max(float(np.max(np.abs(x.coords))), float(np.max(np.abs(y.coords))))
    return float(np.max(np.abs(x.coords - y.coords))) <= tol * scale
