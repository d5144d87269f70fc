"""Perspectives, operator means, relative/Tsallis entropies, bound expressions.

All composite expressions are assembled inside the algebra from the primitive
operations (quadratic map, functional calculus, linear combinations); none of
the printed formulas are algebraically simplified before evaluation, so the
verification harness exercises the expressions exactly as stated.

Throughout, C denotes the inner element {A^(-beta/2) B A^(-beta/2)}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .calculus import func_calculus, inverse, power, require_positive_invertible
from .core import affine, identity, jordan_product, quad_map
from .elements import (
    JordanElement,
    ScalarFunction,
    SF_LOG,
    SF_NEG_XLOGX,
    sf_ln_lambda,
    sf_power,
)
from .errors import ParameterError

__all__ = [
    "EntropyParams",
    "BoundKind",
    "ScalarBoundFamily",
    "perspective",
    "harmonic_mean",
    "geometric_mean",
    "ab_geometric_mean",
    "rel_entropy",
    "rel_entropy_xlogx",
    "rel_entropy_ab",
    "tsallis",
    "tsallis_lb",
    "ln_lambda",
    "bound_expr",
    "scalar_bound_eval",
    "congruence",
]


@dataclass(frozen=True)
class EntropyParams:
    """Parameter bundle for entropy/bound evaluation; fields are optional and
    validated by the operation that reads them."""

    alpha: float | None = None
    beta: float | None = None
    lam: float | None = None
    delta: float | None = None

    def need_alpha(self) -> float:
        if self.alpha is None or self.alpha < 0:
            raise ParameterError(f"alpha must be >= 0, got {self.alpha!r}")
        return float(self.alpha)

    def need_beta(self) -> float:
        if self.beta is None or self.beta <= 0:
            raise ParameterError(f"beta must be > 0, got {self.beta!r}")
        return float(self.beta)

    def need_lam(self) -> float:
        if self.lam is None or not 0 < self.lam <= 1:
            raise ParameterError(f"lambda must be in (0, 1], got {self.lam!r}")
        return float(self.lam)

    def need_delta(self) -> float:
        if self.delta is None or self.delta <= 0:
            raise ParameterError(f"delta must be > 0, got {self.delta!r}")
        return float(self.delta)

    def to_dict(self) -> dict:
        out = {}
        for name, value in (
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("lambda", self.lam),
            ("delta", self.delta),
        ):
            if value is not None:
                out[name] = float(value)
        return out


class BoundKind(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    I_DELTA = "Id"
    II_DELTA = "IId"
    III_DELTA = "IIId"
    V_DELTA = "Vd"


class ScalarBoundFamily(enum.Enum):
    R_DELTA = "r_delta"
    S_DELTA = "s_delta"
    Q = "q"
    J_DELTA = "j_delta"
    K_DELTA = "k_delta"


def congruence(c: JordanElement, x: JordanElement) -> JordanElement:
    """{c x c}; alias of the quadratic map read as a congruence transform."""
    return quad_map(c, x)


def perspective(
    f: ScalarFunction, h: ScalarFunction, a: JordanElement, b: JordanElement
) -> JordanElement:
    """P_{f,h}(a, b) = {h(b)^(1/2) f({h(b)^(-1/2) a h(b)^(-1/2)}) h(b)^(1/2)}.

    Requires h > 0 on the spectrum of b so the half powers exist.
    """
    hb = func_calculus(b, h)
    require_positive_invertible(hb, "perspective: h(b)")
    hb_mh = power(hb, -0.5)
    hb_ph = power(hb, 0.5)
    inner = quad_map(hb_mh, a)
    return quad_map(hb_ph, func_calculus(inner, f))


def _inner_c(a: JordanElement, b: JordanElement, beta: float) -> JordanElement:
    """C = {a^(-beta/2) b a^(-beta/2)} for positive invertible a, b."""
    require_positive_invertible(a, "first operand")
    require_positive_invertible(b, "second operand")
    a_mh = power(a, -beta / 2.0)
    return quad_map(a_mh, b)


def _outer(a: JordanElement, beta: float, z: JordanElement) -> JordanElement:
    return quad_map(power(a, beta / 2.0), z)


def harmonic_mean(a: JordanElement, b: JordanElement, t: float) -> JordanElement:
    """a !_t b = ((1 - t) a^(-1) + t b^(-1))^(-1), t in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ParameterError(f"harmonic mean weight must be in [0, 1], got {t!r}")
    require_positive_invertible(a, "harmonic_mean: first operand")
    require_positive_invertible(b, "harmonic_mean: second operand")
    mix = affine(inverse(a), inverse(b), 1.0 - t, t)
    return inverse(mix)


def geometric_mean(a: JordanElement, b: JordanElement, lam: float) -> JordanElement:
    """a #_lam b = {a^(1/2) ({a^(-1/2) b a^(-1/2)})^lam a^(1/2)}, lam in [-1, 2]."""
    if not -1.0 <= lam <= 2.0:
        raise ParameterError(f"geometric mean power must be in [-1, 2], got {lam!r}")
    c = _inner_c(a, b, 1.0)
    return _outer(a, 1.0, power(c, lam))


def ab_geometric_mean(
    a: JordanElement, b: JordanElement, alpha: float, beta: float
) -> JordanElement:
    """a #_(alpha, beta) b = {a^(beta/2) ({a^(-beta/2) b a^(-beta/2)})^alpha a^(beta/2)}.

    alpha may be any real (the bound chains shift it below 0 and above 1);
    beta must be positive.
    """
    if beta <= 0:
        raise ParameterError(f"beta must be > 0, got {beta!r}")
    c = _inner_c(a, b, beta)
    return _outer(a, beta, power(c, alpha))


def rel_entropy(a: JordanElement, b: JordanElement) -> JordanElement:
    """S(a|b) = {a^(1/2) log({a^(-1/2) b a^(-1/2)}) a^(1/2)}."""
    c = _inner_c(a, b, 1.0)
    return _outer(a, 1.0, func_calculus(c, SF_LOG))


def rel_entropy_xlogx(a: JordanElement, b: JordanElement) -> JordanElement:
    """Cross-check form {b^(1/2) [-D o log D] b^(1/2)} with D = {b^(-1/2) a b^(-1/2)}."""
    d = _inner_c(b, a, 1.0)
    return _outer(b, 1.0, func_calculus(d, SF_NEG_XLOGX))


def rel_entropy_ab(
    a: JordanElement, b: JordanElement, alpha: float, beta: float
) -> JordanElement:
    """S_(alpha, beta)(a|b) = {a^(beta/2) [C^alpha o log C] a^(beta/2)}."""
    if alpha < 0:
        raise ParameterError(f"alpha must be >= 0, got {alpha!r}")
    if beta <= 0:
        raise ParameterError(f"beta must be > 0, got {beta!r}")
    c = _inner_c(a, b, beta)
    inner = jordan_product(power(c, alpha), func_calculus(c, SF_LOG))
    return _outer(a, beta, inner)


def ln_lambda(x: float, lam: float) -> float:
    """Deformed logarithm (x**lam - 1)/lam for x > 0, lam != 0."""
    if lam == 0.0:
        raise ParameterError("lambda must be nonzero; the limit is log")
    if x <= 0.0:
        raise ParameterError(f"ln_lambda requires x > 0, got {x!r}")
    return math.expm1(lam * math.log(x)) / lam


def tsallis(a: JordanElement, b: JordanElement, lam: float) -> JordanElement:
    """T_lam(a|b) = (a #_lam b - a) / lam for lam in (0, 1]."""
    if not 0.0 < lam <= 1.0:
        raise ParameterError(
            f"lambda must be in (0, 1], got {lam!r}; negative orders go through "
            "tsallis_lb, the lambda -> 0 limit is rel_entropy"
        )
    g = geometric_mean(a, b, lam)
    return affine(g, a, 1.0 / lam, -1.0 / lam)


def tsallis_lb(
    a: JordanElement, b: JordanElement, lam: float, beta: float
) -> JordanElement:
    """T_(lam, beta)(a|b) = {a^(beta/2) ln_lam(C) a^(beta/2)}, lam in [-1, 1] \\ {0}."""
    if lam == 0.0:
        raise ParameterError("lambda must be nonzero; the limit is rel_entropy_ab(0, beta)")
    if not -1.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must be in [-1, 1], got {lam!r}")
    if beta <= 0:
        raise ParameterError(f"beta must be > 0, got {beta!r}")
    c = _inner_c(a, b, beta)
    return _outer(a, beta, func_calculus(c, sf_ln_lambda(lam)))


# ---------------------------------------------------------------------------
# Bound expressions (evaluated verbatim, never reduced)

def bound_expr(
    kind: BoundKind, a: JordanElement, b: JordanElement, params: EntropyParams
) -> JordanElement:
    """One of the printed bound expressions for S_(alpha, beta) / T_(lam, beta).

    I/II/III/V take (alpha, beta); IV takes (lam, beta); the delta variants
    take (alpha, beta, delta).
    """
    if kind is BoundKind.I:
        return _bound_one(a, b, params.need_alpha(), params.need_beta())
    if kind is BoundKind.II:
        return _bound_two(a, b, params.need_alpha(), params.need_beta())
    if kind is BoundKind.III:
        alpha, beta = params.need_alpha(), params.need_beta()
        return (
            ab_geometric_mean(a, b, alpha + 0.5, beta)
            - ab_geometric_mean(a, b, alpha - 0.5, beta)
        )
    if kind is BoundKind.V:
        alpha, beta = params.need_alpha(), params.need_beta()
        return 0.5 * (
            ab_geometric_mean(a, b, alpha + 1.0, beta)
            - ab_geometric_mean(a, b, alpha - 1.0, beta)
        )
    if kind is BoundKind.IV:
        lam, beta = params.need_lam(), params.need_beta()
        return 0.5 * (
            ab_geometric_mean(a, b, lam, beta)
            - ab_geometric_mean(a, b, lam - 1.0, beta)
            + ab_geometric_mean(a, b, 1.0, beta)
            - ab_geometric_mean(a, b, 0.0, beta)
        )
    if kind is BoundKind.I_DELTA:
        return _bound_one_delta(
            a, b, params.need_alpha(), params.need_beta(), params.need_delta()
        )
    if kind is BoundKind.II_DELTA:
        return _bound_two_delta(
            a, b, params.need_alpha(), params.need_beta(), params.need_delta()
        )
    if kind is BoundKind.III_DELTA:
        alpha, beta, delta = params.need_alpha(), params.need_beta(), params.need_delta()
        rd = math.sqrt(delta)
        return (
            (1.0 / rd) * ab_geometric_mean(a, b, alpha + 0.5, beta)
            - rd * ab_geometric_mean(a, b, alpha - 0.5, beta)
            + math.log(delta) * ab_geometric_mean(a, b, alpha, beta)
        )
    if kind is BoundKind.V_DELTA:
        alpha, beta, delta = params.need_alpha(), params.need_beta(), params.need_delta()
        return 0.5 * (
            (1.0 / delta) * ab_geometric_mean(a, b, alpha + 1.0, beta)
            - delta * ab_geometric_mean(a, b, alpha - 1.0, beta)
        ) + math.log(delta) * ab_geometric_mean(a, b, alpha, beta)
    raise ParameterError(f"unknown bound kind {kind!r}")


def _bound_one(a, b, alpha, beta):
    # I = 2 {a^(b/2) [(1 - 2 (1 + C)^(-1)) o C^alpha] a^(b/2)}
    c = _inner_c(a, b, beta)
    one = identity(a.algebra)
    factor = one - 2.0 * inverse(one + c)
    inner = jordan_product(factor, power(c, alpha))
    return 2.0 * _outer(a, beta, inner)


def _bound_two(a, b, alpha, beta):
    # II = 4 a#(alpha,beta)b - 8 {a^(b/2) [C^alpha o (C^(1/2) + 1)^(-1)] a^(b/2)}
    c = _inner_c(a, b, beta)
    one = identity(a.algebra)
    res = inverse(power(c, 0.5) + one)
    inner = jordan_product(power(c, alpha), res)
    return 4.0 * ab_geometric_mean(a, b, alpha, beta) - 8.0 * _outer(a, beta, inner)


def _bound_one_delta(a, b, alpha, beta, delta):
    # I' = (ln d + 2) a#(alpha,beta)b - 4 d {a^(b/2) [(C + d)^(-1) o C^alpha] a^(b/2)}
    # coefficient 4d: the scalar profile must be (ln d + 2 - 4d/(x+d)) x^alpha,
    # which reduces to I at d = 1 and matches the reduced closed form
    c = _inner_c(a, b, beta)
    one = identity(a.algebra)
    res = inverse(c + delta * one)
    inner = jordan_product(res, power(c, alpha))
    return (math.log(delta) + 2.0) * ab_geometric_mean(a, b, alpha, beta) - (
        4.0 * delta
    ) * _outer(a, beta, inner)


def _bound_two_delta(a, b, alpha, beta, delta):
    # II' = (ln d + 4) a#(alpha,beta)b
    #       - 8 sqrt(d) {a^(b/2) [(C^(1/2) + sqrt(d))^(-1) o C^alpha] a^(b/2)}
    c = _inner_c(a, b, beta)
    one = identity(a.algebra)
    rd = math.sqrt(delta)
    res = inverse(power(c, 0.5) + rd * one)
    inner = jordan_product(res, power(c, alpha))
    return (math.log(delta) + 4.0) * ab_geometric_mean(a, b, alpha, beta) - (
        8.0 * rd
    ) * _outer(a, beta, inner)


# ---------------------------------------------------------------------------
# Scalar bound families (the five functions whose perspectives generate the
# delta bound chains)

def scalar_bound_eval(
    family: ScalarBoundFamily, x: float, alpha: float, delta: float
) -> float:
    if x <= 0:
        raise ParameterError(f"scalar bounds are defined for x > 0, got {x!r}")
    if delta <= 0:
        raise ParameterError(f"delta must be > 0, got {delta!r}")
    if alpha < 0:
        raise ParameterError(f"alpha must be >= 0, got {alpha!r}")
    xa = x ** alpha
    if family is ScalarBoundFamily.R_DELTA:
        return (math.log(delta) + 2.0 * (1.0 - 2.0 * delta / (x + delta))) * xa
    if family is ScalarBoundFamily.S_DELTA:
        return (
            math.log(delta) + 4.0 - 8.0 * math.sqrt(delta) / (math.sqrt(x) + math.sqrt(delta))
        ) * xa
    if family is ScalarBoundFamily.Q:
        return xa * math.log(x)
    if family is ScalarBoundFamily.J_DELTA:
        rd = math.sqrt(delta)
        return x ** (alpha + 0.5) / rd - x ** (alpha - 0.5) * rd + xa * math.log(delta)
    if family is ScalarBoundFamily.K_DELTA:
        return (
            x ** (alpha + 1.0) / (2.0 * delta)
            - (x ** (alpha - 1.0) / 2.0) * delta
            + xa * math.log(delta)
        )
    raise ParameterError(f"unknown scalar bound family {family!r}")
