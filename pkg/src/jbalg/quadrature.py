"""Gauss quadrature rules and the integral representations they discretize.

Rules are built by the Golub-Welsch method: the symmetric tridiagonal matrix
of the three-term recurrence for the (monic) Jacobi polynomials is
diagonalized with the same hand-written Jacobi eigensolver the matrix backend
uses; nodes are the eigenvalues and weights are mu0 times the squared first
eigenvector components.

The Tsallis/geometric-mean integrals carry the weight
t^(lambda-1) (1-t)^(-lambda) on [0, 1], which maps to the standard Jacobi
weight (1-u)^a (1+u)^b on [-1, 1] with a = -lambda, b = lambda - 1 and unit
jacobian factor.  The beta-integral normalization

    integral_0^1 t^(lambda-1) (1-t)^(-lambda) dt = pi / sin(lambda pi)

is checked on every rule construction (WEIGHT_CHECK_TOL); a failure is an
internal inconsistency, not a caller error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import affine
from .elements import JordanElement
from .entropy import harmonic_mean
from .errors import ConsistencyError, ParameterError
from .symmetric import jacobi_eigh

__all__ = [
    "QuadratureRule",
    "QuadratureConfig",
    "gauss_legendre_01",
    "gauss_jacobi_entropy",
    "weight_normalization",
    "quad_integral_S",
    "quad_integral_T",
    "quad_integral_geo",
]

MIN_NODES = 8
WEIGHT_CHECK_TOL = 1e-8


class QuadratureRule(enum.Enum):
    GAUSS_LEGENDRE = "GaussLegendre"
    GAUSS_JACOBI = "GaussJacobi"


@dataclass(frozen=True)
class QuadratureConfig:
    nodes: int = 128
    rule: QuadratureRule = QuadratureRule.GAUSS_JACOBI

    def __post_init__(self):
        if self.nodes < MIN_NODES:
            raise ParameterError(f"node count must be >= {MIN_NODES}, got {self.nodes}")


def _golub_welsch(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for weight (1-u)^a (1+u)^b on [-1, 1], a, b > -1."""
    diag = np.empty(n)
    diag[0] = (b - a) / (a + b + 2.0)
    for k in range(1, n):
        denom = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0)
        diag[k] = (b * b - a * a) / denom
    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = math.sqrt(
            4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) ** 2 * (a + b + 3.0))
        )
        for k in range(2, n):
            num = 4.0 * k * (k + a) * (k + b) * (k + a + b)
            den = (2.0 * k + a + b) ** 2 * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b - 1.0)
            off[k - 1] = math.sqrt(num / den)
    jmat = np.diag(diag)
    for k in range(n - 1):
        jmat[k, k + 1] = off[k]
        jmat[k + 1, k] = off[k]
    ef = jacobi_eigh(jmat)
    mu0 = 2.0 ** (a + b + 1.0) * math.exp(
        math.lgamma(a + 1.0) + math.lgamma(b + 1.0) - math.lgamma(a + b + 2.0)
    )
    nodes = ef.eigenvalues.copy()
    weights = mu0 * ef.frame[0, :] ** 2
    return nodes, weights


_RULE_CACHE: dict = {}


def gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [0, 1]."""
    key = ("legendre", n)
    hit = _RULE_CACHE.get(key)
    if hit is None:
        u, w = _golub_welsch(n, 0.0, 0.0)
        hit = ((u + 1.0) / 2.0, w / 2.0)
        _RULE_CACHE[key] = hit
    return hit


def gauss_jacobi_entropy(n: int, lam: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for the weight t^(lam-1) (1-t)^(-lam), 0 < lam < 1.

    Includes the built-in normalization self-test: the quadrature of the bare
    weight (= sum of weights) must reproduce pi / sin(lam pi) to 1e-8.
    """
    if not 0.0 < lam < 1.0:
        raise ParameterError(f"jacobi weight requires 0 < lambda < 1, got {lam!r}")
    key = ("jacobi", n, lam)
    hit = _RULE_CACHE.get(key)
    if hit is None:
        u, w = _golub_welsch(n, -lam, lam - 1.0)
        t = (u + 1.0) / 2.0
        expected = weight_normalization(lam)
        got = float(np.sum(w))
        if abs(got - expected) > WEIGHT_CHECK_TOL * abs(expected):
            raise ConsistencyError(
                f"weight normalization check failed: sum(weights) = {got!r}, "
                f"pi/sin(lambda pi) = {expected!r}"
            )
        hit = (t, w)
        _RULE_CACHE[key] = hit
    return hit


def weight_normalization(lam: float) -> float:
    """pi / sin(lambda pi): the exact integral of the entropy weight."""
    return math.pi / math.sin(lam * math.pi)


def quad_integral_S(
    a: JordanElement, b: JordanElement, config: QuadratureConfig | None = None
) -> JordanElement:
    """S(a|b) = integral_0^1 (a !_t b - a) / t dt by Gauss-Legendre.

    The integrand extends analytically to t = 0 (the harmonic mean is a
    rational function of t), so interior Legendre nodes see a smooth function.
    """
    config = config or QuadratureConfig(rule=QuadratureRule.GAUSS_LEGENDRE)
    t, w = gauss_legendre_01(config.nodes)
    acc = None
    for ti, wi in zip(t, w):
        term = affine(harmonic_mean(a, b, float(ti)), a, 1.0, -1.0)
        scaled = (float(wi) / float(ti)) * term
        acc = scaled if acc is None else acc + scaled
    return acc


def quad_integral_T(
    a: JordanElement, b: JordanElement, lam: float, config: QuadratureConfig | None = None
) -> JordanElement:
    """T_lam(a|b) = sin(lam pi)/(lam pi) *
    integral_0^1 t^(lam-1) (1-t)^(-lam) (a !_t b - a) dt."""
    config = config or QuadratureConfig()
    t, w = gauss_jacobi_entropy(config.nodes, lam)
    acc = None
    for ti, wi in zip(t, w):
        term = affine(harmonic_mean(a, b, float(ti)), a, 1.0, -1.0)
        scaled = float(wi) * term
        acc = scaled if acc is None else acc + scaled
    return (math.sin(lam * math.pi) / (lam * math.pi)) * acc


def quad_integral_geo(
    a: JordanElement, b: JordanElement, lam: float, config: QuadratureConfig | None = None
) -> JordanElement:
    """a #_lam b = sin(lam pi)/pi *
    integral_0^1 t^(lam-1) (1-t)^(-lam) (a !_t b) dt."""
    config = config or QuadratureConfig()
    t, w = gauss_jacobi_entropy(config.nodes, lam)
    acc = None
    for ti, wi in zip(t, w):
        scaled = float(wi) * harmonic_mean(a, b, float(ti))
        acc = scaled if acc is None else acc + scaled
    return (math.sin(lam * math.pi) / math.pi) * acc
