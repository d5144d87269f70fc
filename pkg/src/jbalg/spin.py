"""Spin factor backend: R (+) R^n with (s, v) o (t, w) = (st + <v, w>, sw + tv).

The spectrum of (s, v) is {s - |v|, s + |v|}, which gives every scalar
function a closed form: writing f+- = f(s +- |v|),

    f((s, v)) = ((f+ + f-)/2, (f+ - f-)/(2|v|) * v)          for v != 0
    f((s, v)) = (f(s), 0)                                     for v = 0.

|v| below V_ZERO_THRESHOLD is treated as zero (the direction v/|v| is
meaningless at denormal scale).
"""

from __future__ import annotations

import math

import numpy as np

from .elements import JordanElement, ScalarFunction, check_domain

__all__ = ["spin_norm_v", "spin_product", "spin_spectrum_pair", "spin_apply"]

V_ZERO_THRESHOLD = 1e-300


def spin_norm_v(v: np.ndarray) -> float:
    """Euclidean norm of the vector part: compensated two-pass (scale, then fsum)."""
    m = float(np.max(np.abs(v))) if v.size else 0.0
    if m == 0.0 or not math.isfinite(m):
        return m
    scaled = v / m
    return m * math.sqrt(math.fsum(float(c) * float(c) for c in scaled))


def spin_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    s, v = x[0], x[1:]
    t, w = y[0], y[1:]
    out = np.empty_like(x)
    out[0] = s * t + float(np.dot(v, w))
    out[1:] = s * w + t * v
    return out


def spin_spectrum_pair(x: JordanElement) -> tuple[float, float]:
    """(lambda_minus, lambda_plus) = (s - |v|, s + |v|)."""
    s = float(x.coords[0])
    r = spin_norm_v(x.coords[1:])
    return s - r, s + r


def spin_apply(x: JordanElement, f: ScalarFunction) -> JordanElement:
    s = float(x.coords[0])
    v = x.coords[1:]
    r = spin_norm_v(v)
    lam_lo, lam_hi = s - r, s + r
    check_domain(f, (lam_lo, lam_hi), max(abs(lam_lo), abs(lam_hi)))
    out = np.empty_like(x.coords)
    if r <= V_ZERO_THRESHOLD:
        out[0] = f(s)
        out[1:] = 0.0
    else:
        fp = f(s + r)
        fm = f(s - r)
        dd = f.dd(s - r, s + r) if f.dd is not None else (fp - fm) / (2.0 * r)
        out[0] = (fp + fm) / 2.0
        out[1:] = float(dd) * v
    return JordanElement(x.algebra, out)
