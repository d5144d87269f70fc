"""Element and descriptor types shared by all algebra backends.

An algebra is identified by an :class:`AlgebraDescriptor` (kind + dimension);
an element is the descriptor plus a flat float64 coordinate vector.  The three
backends store:

* ``SYM``   -- real symmetric n x n matrices, upper triangle row-major,
               n*(n+1)//2 coordinates;
* ``SPIN``  -- spin factors R (+) R^n, coordinates ``[s, v_1 .. v_n]``;
* ``ALBERT`` -- 3 x 3 octonion Hermitian matrices, 27 coordinates
               ``[a, b, c, x1(8), x2(8), x3(8)]`` for diagonal (a, b, c) and
               off-diagonal octonions x1, x2, x3.

Elements are immutable; coordinate arrays are marked read-only so they can be
used as cache keys via their byte representation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

import numpy as np

from .errors import IncompatibleAlgebrasError, InvalidElementError

__all__ = [
    "AlgebraKind",
    "AlgebraDescriptor",
    "JordanElement",
    "ScalarFunction",
    "sym_matrix",
    "spin_factor",
    "albert",
    "element",
    "element_to_dict",
    "element_from_dict",
    "SF_IDENTITY",
    "SF_LOG",
    "SF_EXP",
    "SF_SQRT",
    "sf_power",
    "sf_const",
    "sf_ln_lambda",
    "SF_NEG_XLOGX",
]

ALBERT_COORDS = 27


class AlgebraKind(enum.Enum):
    SYM = "sym"
    SPIN = "spin"
    ALBERT = "albert"


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Identifies one concrete JB-algebra.

    ``dim`` is the matrix side for SYM, the vector-part length for SPIN and
    the fixed coordinate count 27 for ALBERT (there is exactly one Albert
    descriptor).
    """

    kind: AlgebraKind
    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidElementError(f"dim must be a positive integer, got {self.dim!r}")
        if self.kind is AlgebraKind.ALBERT and self.dim != ALBERT_COORDS:
            raise InvalidElementError("the Albert algebra has exactly one shape (27 coordinates)")

    @property
    def coord_count(self) -> int:
        if self.kind is AlgebraKind.SYM:
            return self.dim * (self.dim + 1) // 2
        if self.kind is AlgebraKind.SPIN:
            return 1 + self.dim
        return ALBERT_COORDS

    @property
    def degree(self) -> int:
        """Maximal number of distinct spectral points (size of a spectral frame)."""
        if self.kind is AlgebraKind.SYM:
            return self.dim
        if self.kind is AlgebraKind.SPIN:
            return 2
        return 3

    def __repr__(self):
        return f"AlgebraDescriptor({self.kind.value!r}, dim={self.dim})"


def sym_matrix(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(AlgebraKind.SYM, n)


def spin_factor(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(AlgebraKind.SPIN, n)


def albert() -> AlgebraDescriptor:
    return AlgebraDescriptor(AlgebraKind.ALBERT, ALBERT_COORDS)


@dataclass(frozen=True, eq=False)
class JordanElement:
    """Immutable element of a concrete algebra.

    Equality of elements is a tolerance question, so ``==`` is deliberately
    left at identity semantics; tests compare coordinates explicitly.
    """

    algebra: AlgebraDescriptor
    coords: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coords, dtype=np.float64).reshape(-1)
        if arr.shape[0] != self.algebra.coord_count:
            raise InvalidElementError(
                f"{self.algebra!r} expects {self.algebra.coord_count} coordinates, "
                f"got {arr.shape[0]}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidElementError("element coordinates must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @property
    def cache_key(self) -> bytes:
        return self.coords.tobytes()

    # Coordinatewise linear structure only; the Jordan product lives in core.
    def __add__(self, other: "JordanElement") -> "JordanElement":
        require_same_algebra(self, other)
        return JordanElement(self.algebra, self.coords + other.coords)

    def __sub__(self, other: "JordanElement") -> "JordanElement":
        require_same_algebra(self, other)
        return JordanElement(self.algebra, self.coords - other.coords)

    def __neg__(self) -> "JordanElement":
        return JordanElement(self.algebra, -self.coords)

    def __mul__(self, scalar: float) -> "JordanElement":
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        return JordanElement(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"JordanElement({self.algebra.kind.value}, dim={self.algebra.dim}, coords={self.coords!r})"


def require_same_algebra(x: JordanElement, y: JordanElement) -> None:
    if x.algebra != y.algebra:
        raise IncompatibleAlgebrasError(f"{x.algebra!r} vs {y.algebra!r}")


def element(algebra: AlgebraDescriptor, coords: Iterable[float]) -> JordanElement:
    return JordanElement(algebra, np.asarray(list(coords) if not isinstance(coords, np.ndarray) else coords, dtype=np.float64))


# ---------------------------------------------------------------------------
# Scalar functions

@dataclass(frozen=True)
class ScalarFunction:
    """Real scalar function with an interval domain.

    ``lo``/``hi`` bound the admissible spectrum.  Finite bounds are enforced
    as open inequalities with slack 1e-12 * scale by the functional calculus,
    so the error message can name the violated bound.

    ``dd``, when present, is the first divided difference (f(b) - f(a)) /
    (b - a) in a cancellation-free form (and f'(a) at a == b).  Rank-3
    interpolation needs it: the naive quotient across a tight eigenvalue pair
    carries absolute noise eps * |f| / gap, while the analytic forms stay at
    eps * |f'| however small the gap.
    """

    label: str
    fn: Callable[[float], float]
    lo: float = -math.inf
    hi: float = math.inf
    dd: Callable[[float, float], float] | None = None

    def __call__(self, t: float) -> float:
        return self.fn(t)


def _dd_log(a: float, b: float) -> float:
    g = b - a
    return 1.0 / a if g == 0.0 else math.log1p(g / a) / g


def _dd_exp(a: float, b: float) -> float:
    g = b - a
    return math.exp(a) if g == 0.0 else math.exp(a) * math.expm1(g) / g


def _dd_neg_xlogx(a: float, b: float) -> float:
    # b ln b - a ln a = (b - a) ln b + a (ln b - ln a)
    g = b - a
    if g == 0.0:
        return -(math.log(a) + 1.0)
    return -(math.log(b) + a * math.log1p(g / a) / g)


SF_IDENTITY = ScalarFunction("id", lambda t: t, dd=lambda a, b: 1.0)
SF_LOG = ScalarFunction("log", math.log, lo=0.0, dd=_dd_log)
SF_EXP = ScalarFunction("exp", math.exp, dd=_dd_exp)
SF_SQRT = ScalarFunction(
    "sqrt", math.sqrt, lo=0.0,
    dd=lambda a, b: 1.0 / (math.sqrt(a) + math.sqrt(b)),
)
SF_NEG_XLOGX = ScalarFunction(
    "-x*log(x)", lambda t: -t * math.log(t), lo=0.0, dd=_dd_neg_xlogx
)


def sf_const(c: float) -> ScalarFunction:
    return ScalarFunction(f"const({c!r})", lambda t: c, dd=lambda a, b: 0.0)


def _dd_power(p: float, a: float, b: float) -> float:
    g = b - a
    if g == 0.0:
        return p * a ** (p - 1.0)
    return a ** p * math.expm1(p * math.log1p(g / a)) / g


def _dd_int_power(ip: int, a: float, b: float) -> float:
    # sum_{i} a^i b^(ip-1-i); exact at a == b, no cancellation for same signs,
    # and opposite signs make b - a large enough that accuracy is moot.
    return math.fsum(a ** i * b ** (ip - 1 - i) for i in range(ip))


def sf_power(p: float) -> ScalarFunction:
    """t**p; entire real line for non-negative integer p, else requires t > 0."""
    p = float(p)
    if p >= 0 and p == int(p):
        ip = int(p)
        if ip == 0:
            return ScalarFunction("pow(0)", lambda t: 1.0, dd=lambda a, b: 0.0)
        return ScalarFunction(
            f"pow({ip})", lambda t: float(t) ** ip,
            dd=lambda a, b, _i=ip: _dd_int_power(_i, a, b),
        )
    return ScalarFunction(
        f"pow({p!r})", lambda t: float(t) ** p, lo=0.0,
        dd=lambda a, b, _p=p: _dd_power(_p, a, b),
    )


# Finite domain bounds are enforced strictly, with this much slack relative
# to the spectral radius of the operand.
DOMAIN_SLACK = 1e-12


def check_domain(f: ScalarFunction, values, scale: float) -> None:
    """Raise DomainError if any spectral value leaves f's interval domain.

    Finite bounds are open with slack DOMAIN_SLACK * scale, so e.g. log
    requires min eigenvalue > 1e-12 * ||x||.
    """
    from .errors import DomainError

    slack = DOMAIN_SLACK * scale
    if math.isfinite(f.lo):
        for t in values:
            if not t > f.lo + slack:
                raise DomainError(f.label, float(t), f.lo, side="lower")
    if math.isfinite(f.hi):
        for t in values:
            if not t < f.hi - slack:
                raise DomainError(f.label, float(t), f.hi, side="upper")


def sf_ln_lambda(lam: float) -> ScalarFunction:
    """Deformed logarithm ln_lambda(t) = (t**lambda - 1)/lambda, lambda != 0."""
    lam = float(lam)
    if lam == 0.0:
        raise ValueError("lambda must be nonzero; the lambda -> 0 limit is log")
    # expm1 keeps precision for small lambda where t**lam - 1 cancels.
    return ScalarFunction(
        f"ln_{lam!r}", lambda t: math.expm1(lam * math.log(t)) / lam, lo=0.0,
        dd=lambda a, b, _l=lam: _dd_power(_l, a, b) / _l,
    )


# ---------------------------------------------------------------------------
# JSON-facing dict encoding

_KIND_TO_NAME = {AlgebraKind.SYM: "sym", AlgebraKind.SPIN: "spin", AlgebraKind.ALBERT: "albert"}
_NAME_TO_KIND = {v: k for k, v in _KIND_TO_NAME.items()}


def element_to_dict(x: JordanElement) -> dict:
    d: dict = {"algebra": _KIND_TO_NAME[x.algebra.kind]}
    if x.algebra.kind is not AlgebraKind.ALBERT:
        d["dim"] = x.algebra.dim
    d["coords"] = [float(c) for c in x.coords]
    return d


def element_from_dict(d: dict) -> JordanElement:
    if not isinstance(d, dict) or "algebra" not in d:
        raise InvalidElementError("element object must have an 'algebra' field")
    name = d["algebra"]
    if name not in _NAME_TO_KIND:
        raise InvalidElementError(f"unknown algebra kind {name!r}")
    kind = _NAME_TO_KIND[name]
    coords = d.get("coords")
    if not isinstance(coords, list):
        raise InvalidElementError("element object must carry a 'coords' list")
    if kind is AlgebraKind.ALBERT:
        alg = albert()
    else:
        dim = d.get("dim")
        if not isinstance(dim, int):
            raise InvalidElementError("'dim' must be an integer for sym/spin elements")
        alg = AlgebraDescriptor(kind, dim)
    try:
        arr = np.asarray(coords, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidElementError(f"coords are not numeric: {exc}") from exc
    return JordanElement(alg, arr)
