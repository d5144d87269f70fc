"""Spectrum and functional calculus, dispatching to the backends.

``Spectrum`` holds strictly increasing values with multiplicities summing to
the algebra degree.  The symmetric backend merges only exactly equal
eigenvalues; the spin backend merges the pair when the vector part vanishes;
the Albert backend clusters at its documented relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import albert as _albert
from . import spin as _spin
from . import symmetric as _sym
from .elements import (
    AlgebraKind,
    JordanElement,
    ScalarFunction,
    sf_power,
)
from .errors import PositivityError, SingularityError

__all__ = [
    "Spectrum",
    "spectrum",
    "func_calculus",
    "power",
    "inverse",
    "is_positive",
    "require_positive_invertible",
]

# min |eigenvalue| <= INVERT_RELTOL * ||x|| counts as singular
INVERT_RELTOL = 1e-12
# positive-invertible guard: min eigenvalue must exceed this times (1 + ||x||)
POSITIVITY_SLACK = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Ascending distinct spectral values with multiplicities."""

    values: tuple[float, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.multiplicities) or not self.values:
            raise ValueError("values and multiplicities must be nonempty and aligned")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("spectral values must be strictly increasing")

    @property
    def min(self) -> float:
        return self.values[0]

    @property
    def max(self) -> float:
        return self.values[-1]

    @property
    def radius(self) -> float:
        return max(abs(self.min), abs(self.max))


def _merge_exact(values: np.ndarray) -> Spectrum:
    vals: list[float] = []
    mult: list[int] = []
    for v in values:
        fv = float(v)
        if vals and fv == vals[-1]:
            mult[-1] += 1
        else:
            vals.append(fv)
            mult.append(1)
    return Spectrum(tuple(vals), tuple(mult))


def spectrum(x: JordanElement) -> Spectrum:
    kind = x.algebra.kind
    if kind is AlgebraKind.SYM:
        return _merge_exact(_sym.sym_eigen(x).eigenvalues)
    if kind is AlgebraKind.SPIN:
        lo, hi = _spin.spin_spectrum_pair(x)
        if hi - lo <= _spin.V_ZERO_THRESHOLD:
            return Spectrum((lo,), (2,))
        return Spectrum((lo, hi), (1, 1))
    roots = _albert.albert_roots(x)
    clusters = _albert.albert_clusters(roots)
    return Spectrum(tuple(c[0] for c in clusters), tuple(c[1] for c in clusters))


def func_calculus(x: JordanElement, f: ScalarFunction) -> JordanElement:
    """f(x) in the single-generated (associative) subalgebra of x.

    Domain violations raise DomainError naming the offending eigenvalue and
    the scalar function's bound.
    """
    kind = x.algebra.kind
    if kind is AlgebraKind.SYM:
        return _sym.matrix_apply(x, f)
    if kind is AlgebraKind.SPIN:
        return _spin.spin_apply(x, f)
    return _albert.albert_apply(x, f)


def power(x: JordanElement, p: float) -> JordanElement:
    """x**p; any element for non-negative integer p (power(x, 0) = identity),
    positive invertible x otherwise."""
    return func_calculus(x, sf_power(p))


def inverse(x: JordanElement) -> JordanElement:
    """Spectral inverse; defined for any element whose spectrum avoids zero."""
    sp = spectrum(x)
    min_abs = min(abs(v) for v in sp.values)
    if min_abs <= INVERT_RELTOL * sp.radius:
        raise SingularityError(min_abs)
    inv = ScalarFunction("inv", lambda t: 1.0 / t, dd=lambda a, b: -1.0 / (a * b))
    return func_calculus(x, inv)


def is_positive(x: JordanElement, tol: float = 0.0) -> bool:
    """min Sp(x) >= -tol * (1 + ||x||)."""
    sp = spectrum(x)
    return sp.min >= -tol * (1.0 + sp.radius)


def require_positive_invertible(x: JordanElement, context: str) -> Spectrum:
    sp = spectrum(x)
    if not sp.min > POSITIVITY_SLACK * (1.0 + sp.radius):
        raise PositivityError(context, sp.min)
    return sp
