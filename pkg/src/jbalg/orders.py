"""Loewner-order certification and random element generation.

The order A <= B means B - A is positive (all spectrum >= 0).  Certification
is tolerance-based and scale-relative: bound expressions carry factors of the
operand norms, so an absolute margin is meaningless across trials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import is_positive, power, spectrum
from .core import identity, jb_norm, jordan_product
from .elements import AlgebraDescriptor, AlgebraKind, JordanElement, element, require_same_algebra
from .errors import ParameterError, SamplerError

__all__ = [
    "OrderCertificate",
    "loewner_leq",
    "random_positive",
    "random_square",
    "hypothesis_pair",
]

# Resampling limit for hypothesis-pair construction; hit only for degenerate
# draws (e.g. a near-zero square), so failure here means the sampler is broken.
MAX_RESAMPLE = 64


@dataclass(frozen=True)
class OrderCertificate:
    """Outcome of a Loewner comparison a <= b.

    margin is the minimum eigenvalue of b - a; scale = max(1, |a|, |b|) so
    that the verdict threshold -tol*scale is relative but never collapses
    below -tol for small operands.
    """

    margin: float
    scale: float
    tol: float
    verdict: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "verdict", bool(self.margin >= -self.tol * self.scale))


def loewner_leq(a: JordanElement, b: JordanElement, tol: float) -> OrderCertificate:
    """Certify a <= b up to -tol*scale.  Failure is reported, never raised."""
    require_same_algebra(a, b)
    if tol < 0:
        raise ParameterError(f"tol must be >= 0, got {tol!r}")
    margin = spectrum(b - a).min
    scale = max(1.0, jb_norm(a), jb_norm(b))
    return OrderCertificate(margin=float(margin), scale=scale, tol=float(tol))


def as_generator(seed) -> np.random.Generator:
    """Accept an int seed, SeedSequence, or Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _random_frame(rng: np.random.Generator, n: int) -> np.ndarray:
    # QR of a Gaussian matrix; sign-fix the R diagonal so the frame is a
    # deterministic function of the Gaussian draw.
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_positive(
    algebra: AlgebraDescriptor, cond: float, seed
) -> JordanElement:
    """Positive invertible element with eigenvalue ratio at most cond.

    SymMatrix: random orthogonal frame with log-uniform eigenvalues in
    [1, cond].  SpinFactor: s = 1, |v| = 1 - 2/(cond + 1) in a random
    direction (ratio exactly cond).  Albert: a random element affinely
    shifted and scaled so the extreme roots land on [1, cond].  All outputs
    carry an extra log-uniform overall factor in [1/2, 2].
    """
    if cond < 1:
        raise ParameterError(f"cond must be >= 1, got {cond!r}")
    rng = as_generator(seed)
    m = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
    if cond == 1.0:
        return m * identity(algebra)

    kind = algebra.kind
    if kind is AlgebraKind.SYM:
        n = algebra.dim
        frame = _random_frame(rng, n)
        eig = np.exp(rng.uniform(0.0, math.log(cond), size=n))
        dense = (frame * eig) @ frame.T
        dense = 0.5 * (dense + dense.T)
        from .symmetric import pack

        return element(algebra, m * pack(dense))

    if kind is AlgebraKind.SPIN:
        n = algebra.dim
        v = rng.standard_normal(n)
        norm = float(np.linalg.norm(v))
        if norm < 1e-12:
            v = np.zeros(n)
            v[0] = 1.0
            norm = 1.0
        radius = 1.0 - 2.0 / (cond + 1.0)
        coords = np.concatenate(([1.0], (radius / norm) * v))
        return element(algebra, m * coords)

    # Albert: map the characteristic roots of a raw Gaussian element onto
    # [1, cond] with an affine shift; degenerate (near-scalar) draws fall
    # back to the identity.
    raw = element(algebra, rng.standard_normal(27))
    sp = spectrum(raw)
    lo, hi = sp.min, sp.max
    spread = hi - lo
    if spread < 1e-12 * (1.0 + abs(hi)):
        return m * identity(algebra)
    scaled = ((cond - 1.0) / spread) * (raw - lo * identity(algebra)) + identity(algebra)
    return m * scaled


def random_square(algebra: AlgebraDescriptor, seed) -> JordanElement:
    """G o G for Gaussian G; positive semidefinite in any of the backends."""
    rng = as_generator(seed)
    g = element(algebra, rng.standard_normal(algebra.coord_count))
    return jordan_product(g, g)


def _nonzero_square(
    algebra: AlgebraDescriptor, rng: np.random.Generator, floor: float
) -> JordanElement:
    for _ in range(MAX_RESAMPLE):
        g2 = random_square(algebra, rng)
        if spectrum(g2).max > floor:
            return g2
    raise SamplerError(
        f"could not draw a square with spectral radius > {floor:g} "
        f"after {MAX_RESAMPLE} attempts"
    )


def hypothesis_pair(
    algebra: AlgebraDescriptor,
    rng,
    *,
    beta: float = 1.0,
    delta: float = 1.0,
    direction: str = "leq",
    cond: float = 100.0,
    violate: bool = False,
) -> tuple[JordanElement, JordanElement]:
    """Random positive pair (a, b) with delta * a^beta <= b (direction "leq")
    or delta * a^beta >= b ("geq"); "eq" forces b = delta * a^beta.

    Dominated pairs are built additively, b = delta * a^beta +/- s * G^2,
    which guarantees the order without rejection sampling.  With violate=True
    the perturbation sign is flipped (strength 0.3..0.95 of the headroom), so
    the stated hypothesis fails decisively while b stays positive invertible.
    """
    rng = as_generator(rng)
    if direction not in ("leq", "geq", "eq"):
        raise ParameterError(f"unknown hypothesis direction {direction!r}")

    for _ in range(MAX_RESAMPLE):
        a = random_positive(algebra, cond, rng)
        target = power(a, beta) if beta != 1.0 else a
        if delta != 1.0:
            target = delta * target
        if direction == "eq":
            return a, target

        t_min = spectrum(target).min
        want_dominated = (direction == "leq") != violate
        if want_dominated:
            if violate:
                g2 = _nonzero_square(algebra, rng, 1e-10)
                eta = rng.uniform(0.3, 1.0) * jb_norm(target) / jb_norm(g2)
            else:
                g2 = random_square(algebra, rng)
                eta = rng.uniform(0.0, 1.0) * jb_norm(target) / max(1e-300, jb_norm(g2))
            b = target + eta * g2
        else:
            # Subtract a square scaled to a fraction of the positivity
            # headroom: b = target - theta * (t_min / r) * G^2 keeps
            # min Sp(b) >= (1 - theta) * t_min > 0.
            g2 = _nonzero_square(algebra, rng, 1e-10)
            r = spectrum(g2).max
            theta = rng.uniform(0.3, 0.95) if violate else rng.uniform(0.0, 0.95)
            b = target - (theta * t_min / r) * g2
        if is_positive(b) and spectrum(b).min > 1e-13 * spectrum(b).radius:
            return a, b
    raise SamplerError(
        f"hypothesis sampler ({direction}, violate={violate}) failed to build "
        f"a positive dominated pair after {MAX_RESAMPLE} attempts"
    )
