"""Inequality and identity registry with seeded verification campaigns.

Each entry certifies either a chain of Loewner links (order entries) or an
operator identity (identity entries) on randomly sampled operands.  Campaigns
are deterministic by construction: trial k of entry e draws its stream from
SeedSequence([seed, crc32(e), k]) independent of execution order, so serial
and parallel runs reduce to byte-identical reports.

Link margins are scale-normalized (margin / max(1, operand norms)): the
chains mix expressions whose norms vary by orders of magnitude across trials,
and only relative margins are comparable.  A link passes iff its normalized
margin is >= -tol.  Identity entries reuse the same slot with margin =
-relative_deviation and scale 1.
"""

from __future__ import annotations

import math
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .calculus import func_calculus, inverse, power, spectrum
from .core import affine, identity, jb_norm, quad_map
from .elements import (
    SF_LOG,
    SF_NEG_XLOGX,
    AlgebraDescriptor,
    AlgebraKind,
    JordanElement,
    albert,
    element_to_dict,
    spin_factor,
    sym_matrix,
)
from .entropy import (
    BoundKind,
    EntropyParams,
    ScalarBoundFamily,
    ab_geometric_mean,
    congruence,
    geometric_mean,
    harmonic_mean,
    rel_entropy,
    rel_entropy_ab,
    rel_entropy_xlogx,
    scalar_bound_eval,
    tsallis,
    tsallis_lb,
)
from .errors import ParameterError, ReportFormatError, UnknownIdError
from .orders import as_generator, hypothesis_pair, loewner_leq, random_positive, random_square
from .quadrature import (
    QuadratureConfig,
    gauss_jacobi_entropy,
    quad_integral_S,
    quad_integral_T,
    quad_integral_geo,
    weight_normalization,
)

__all__ = [
    "ChainReport",
    "RegistryEntry",
    "verify_chain",
    "verify_identity",
    "run_entry",
    "get_entry",
    "chain_ids",
    "identity_ids",
    "all_ids",
    "default_run_ids",
    "negative_control_ids",
    "report_dumps",
    "report_from_dict",
    "DEFAULT_DIMS",
    "DEFAULT_COND",
    "NEGATE_COND",
]

ALPHA_GRID = (0.0, 0.5, 1.0, 2.0)
BETA_GRID = (0.5, 1.0, 2.0)
LAM_GRID = (0.1, 0.5, 0.9, 1.0)
LAM_OPEN_GRID = (0.1, 0.5, 0.9)  # quadrature orders need lam strictly inside (0, 1)
DELTA_UP_GRID = (1.0, 2.0, 5.0)
DELTA_DOWN_GRID = (0.2, 0.5, 1.0)

DEFAULT_DIMS = {"sym": (2, 3, 4, 6, 8), "spin": (1, 2, 4, 8), "albert": (3,)}
# Default spectral spread of sampled operands.  The binding constraint is the
# verbatim bound forms (4 geo - 8 {...} and friends): at beta = 2 their terms
# reach ~ cond^2 in norm while the difference sits near 0 on hypothesis pairs,
# so each link carries absolute roundoff ~ eps * cond^2 * k against a
# tolerance of 1e-8 * max(1, operand norms).  cond = 300 keeps that floor
# near 1e-9 on the worst draws; the sampler itself accepts anything up to 1e4.
DEFAULT_COND = 300.0
# Negative controls run at modest conditioning so a violated hypothesis moves
# conclusion margins far above the certification tolerance.
NEGATE_COND = 10.0
DEFAULT_TRIALS = 500
VIOLATION_CAP = 32

# Equality-case tolerances for the "T = 0 iff a^beta = b" check; the forward
# direction is only certifiable numerically, at 1e-6 * scale.
EQ_FORWARD_TOL = 1e-6
EQ_CONVERSE_TOL = 1e-5


def _descriptor(kind: str, dim: int) -> AlgebraDescriptor:
    if kind == "sym":
        return sym_matrix(dim)
    if kind == "spin":
        return spin_factor(dim)
    if kind == "albert":
        return albert()
    raise ParameterError(f"unknown backend {kind!r}")


def _grid(alphas=(None,), betas=(None,), lams=(None,), deltas=(None,)):
    out = []
    for a in alphas:
        for b in betas:
            for l in lams:
                for d in deltas:
                    out.append(EntropyParams(alpha=a, beta=b, lam=l, delta=d))
    return tuple(out)


@dataclass(frozen=True)
class RegistryEntry:
    """One verifiable claim: a Loewner chain, a property, or an identity.

    trial(algebra, rng, params, cond, tol, trial_index, negate) returns
    (links, sample) where links is a list of (label, margin, scale) with
    margin None when the check does not apply to this trial, and sample is a
    JSON-ready dict for violation replay.
    """

    entry_id: str
    mode: str  # "order" or "identity"
    description: str
    grid: tuple
    trial: Callable
    backends: tuple[str, ...] = ("sym", "spin", "albert")
    negative_control: bool = False
    in_all: bool = True
    default_trials: int = DEFAULT_TRIALS
    default_tol: float = 1e-8
    default_cond: float = DEFAULT_COND
    dims_override: dict | None = None


# ---------------------------------------------------------------------------
# Link construction helpers

def _consecutive(exprs):
    return [
        (f"{la}<={lb}", ea, eb)
        for (la, ea), (lb, eb) in zip(exprs, exprs[1:])
    ]


def _certify(chain, tol):
    links = []
    for label, lhs, rhs in chain:
        cert = loewner_leq(lhs, rhs, tol)
        links.append((label, cert.margin, cert.scale))
    return links


def _pair_sample(a, b, p):
    return {"a": element_to_dict(a), "b": element_to_dict(b), "params": p.to_dict()}


_HYP_DIRECTION = {"leq": "leq", "geq": "geq", "delta-leq": "leq", "delta-geq": "geq"}


def _sample_pair(hypothesis, algebra, rng, p, cond, negate):
    if hypothesis == "none":
        if negate:
            raise ParameterError("entry has no hypothesis to negate")
        return (
            random_positive(algebra, cond, rng),
            random_positive(algebra, cond, rng),
        )
    delta = p.delta if hypothesis.startswith("delta") else 1.0
    return hypothesis_pair(
        algebra,
        rng,
        beta=p.beta if p.beta is not None else 1.0,
        delta=delta if delta is not None else 1.0,
        direction=_HYP_DIRECTION[hypothesis],
        cond=cond,
        violate=negate,
    )


def _chain_trial(hypothesis, builder):
    def trial(algebra, rng, p, cond, tol, trial_index, negate):
        a, b = _sample_pair(hypothesis, algebra, rng, p, cond, negate)
        return _certify(builder(a, b, p), tol), _pair_sample(a, b, p)

    return trial


def _geo_diff(a, b, alpha, beta):
    return ab_geometric_mean(a, b, alpha, beta) - ab_geometric_mean(a, b, alpha - 1.0, beta)


# ---------------------------------------------------------------------------
# Chain builders (order entries)

def _build_sandwich_lower_upper(kind):
    # geo-diff(alpha) <= expr <= geo-diff(alpha + 1), no hypothesis
    def build(a, b, p):
        alpha, beta = p.need_alpha(), p.need_beta()
        mid = bound_expr_cached(kind, a, b, p)
        return [
            ("lower<=" + kind.value, _geo_diff(a, b, alpha, beta), mid),
            (kind.value + "<=upper", mid, _geo_diff(a, b, alpha + 1.0, beta)),
        ]

    return build


def bound_expr_cached(kind, a, b, p):
    # thin alias; the eigenframe cache underneath makes repeat C-
    # decompositions cheap, so no memoization needed at this level
    from .entropy import bound_expr

    return bound_expr(kind, a, b, p)


def _build_geo_diff_monotone(a, b, p):
    alpha, beta = p.need_alpha(), p.need_beta()
    return [("base<=shifted", _geo_diff(a, b, 0.0, beta), _geo_diff(a, b, alpha, beta))]


def _sandwich_exprs(a, b, p):
    alpha, beta = p.need_alpha(), p.need_beta()
    return [
        ("I", bound_expr_cached(BoundKind.I, a, b, p)),
        ("II", bound_expr_cached(BoundKind.II, a, b, p)),
        ("S", rel_entropy_ab(a, b, alpha, beta)),
        ("III", bound_expr_cached(BoundKind.III, a, b, p)),
        ("V", bound_expr_cached(BoundKind.V, a, b, p)),
    ]


def _build_sandwich(ascending):
    def build(a, b, p):
        exprs = _sandwich_exprs(a, b, p)
        if not ascending:
            exprs = exprs[::-1]
        return _consecutive(exprs)

    return build


def _build_sandwich_extended(ascending):
    def build(a, b, p):
        alpha, beta = p.need_alpha(), p.need_beta()
        exprs = _sandwich_exprs(a, b, p)
        if not ascending:
            exprs = exprs[::-1]
        exprs = (
            [("lower", _geo_diff(a, b, alpha, beta))]
            + exprs
            + [("upper", _geo_diff(a, b, alpha + 1.0, beta))]
        )
        return _consecutive(exprs)

    return build


def _reduced_core(a, b):
    # shared subexpressions of the alpha=0, beta=1 reduced chains
    aba = quad_map(a, inverse(b))  # {a b^-1 a}
    geo_half = geometric_mean(a, b, 0.5)
    return aba, geo_half


def _build_reduced_chain(ascending):
    # the alpha=0, beta=1 chain written with its reduced closed forms
    def build(a, b, p):
        aba, geo_half = _reduced_core(a, b)
        red_one = 2.0 * (a - 2.0 * quad_map(a, inverse(a + b)))
        red_two = 4.0 * a - 8.0 * quad_map(a, inverse(geo_half + a))
        mid = rel_entropy(a, b)
        red_three = geo_half - geometric_mean(a, b, -0.5)
        red_five = 0.5 * (b - aba)
        core = [
            ("I-red", red_one),
            ("II-red", red_two),
            ("S", mid),
            ("III-red", red_three),
            ("V-red", red_five),
        ]
        if not ascending:
            core = core[::-1]
        exprs = [("lower", a - aba)] + core + [("upper", b - a)]
        return _consecutive(exprs)

    return build


def _delta_reduced_exprs(a, b, delta):
    aba, geo_half = _reduced_core(a, b)
    ld = math.log(delta)
    rd = math.sqrt(delta)
    return {
        "lower": a - aba,
        "I-red": 2.0 * (a - 2.0 * quad_map(a, inverse(a + b))),
        "Id-red": ld * a + 2.0 * (a - 2.0 * delta * quad_map(a, inverse(delta * a + b))),
        "IId-red": (ld + 4.0) * a - 8.0 * rd * quad_map(a, inverse(geo_half + rd * a)),
        "S": rel_entropy(a, b),
        "IIId-red": (1.0 / rd) * geo_half - rd * geometric_mean(a, b, -0.5) + ld * a,
        "Vd-red": 0.5 * ((1.0 / delta) * b - delta * aba) + ld * a,
        "V-red": 0.5 * (b - aba),
        "upper": b - a,
    }


_DELTA_CHAIN_UP = ("lower", "I-red", "Id-red", "IId-red", "S", "IIId-red", "Vd-red", "V-red", "upper")
_DELTA_CHAIN_DOWN = ("lower", "V-red", "Vd-red", "IIId-red", "S", "IId-red", "Id-red", "I-red", "upper")


def _build_delta_reduced(order):
    def build(a, b, p):
        table = _delta_reduced_exprs(a, b, p.need_delta())
        return _consecutive([(name, table[name]) for name in order])

    return build


def _build_delta_sandwich(ascending):
    def build(a, b, p):
        exprs = [
            ("Id", bound_expr_cached(BoundKind.I_DELTA, a, b, p)),
            ("IId", bound_expr_cached(BoundKind.II_DELTA, a, b, p)),
            ("S", rel_entropy_ab(a, b, p.need_alpha(), p.need_beta())),
            ("IIId", bound_expr_cached(BoundKind.III_DELTA, a, b, p)),
            ("Vd", bound_expr_cached(BoundKind.V_DELTA, a, b, p)),
        ]
        if not ascending:
            exprs = exprs[::-1]
        return _consecutive(exprs)

    return build


def _build_delta_refines(delta_up):
    # II vs II-delta and III-delta vs III; direction flips with the delta branch
    def build(a, b, p):
        two = bound_expr_cached(BoundKind.II, a, b, p)
        two_d = bound_expr_cached(BoundKind.II_DELTA, a, b, p)
        three = bound_expr_cached(BoundKind.III, a, b, p)
        three_d = bound_expr_cached(BoundKind.III_DELTA, a, b, p)
        if delta_up:
            return [("II<=IId", two, two_d), ("IIId<=III", three_d, three)]
        return [("IId<=II", two_d, two), ("III<=IIId", three, three_d)]

    return build


def _build_tsallis_order(a, b, p):
    lam, beta = p.need_lam(), p.need_beta()
    return _consecutive(
        [
            ("T-neg", tsallis_lb(a, b, -lam, beta)),
            ("S0", rel_entropy_ab(a, b, 0.0, beta)),
            ("T-pos", tsallis_lb(a, b, lam, beta)),
        ]
    )


def _tsallis_bounds_trial(algebra, rng, p, cond, tol, trial_index, negate):
    # every fifth trial pins b = a^beta exactly so the equality case of
    # "T = 0 iff a^beta = b" is exercised, not just the generic chain
    lam, beta = p.need_lam(), p.need_beta()
    eq_trial = trial_index % 5 == 0
    if eq_trial:
        a, b = hypothesis_pair(algebra, rng, beta=beta, direction="eq", cond=cond)
    else:
        a = random_positive(algebra, cond, rng)
        b = random_positive(algebra, cond, rng)
    t_el = tsallis_lb(a, b, lam, beta)
    lower = _geo_diff(a, b, 0.0, beta)
    upper = _geo_diff(a, b, 1.0, beta)
    links = _certify([("lower<=T", lower, t_el), ("T<=upper", t_el, upper)], tol)

    a_pow = power(a, beta)
    scale = max(1.0, jb_norm(a_pow), jb_norm(b))
    t_norm = jb_norm(t_el)
    diff_norm = jb_norm(a_pow - b)
    if eq_trial:
        links.append(("eq-forces-T-zero", EQ_FORWARD_TOL * scale - t_norm, scale))
    else:
        links.append(("eq-forces-T-zero", None, None))
    if t_norm <= EQ_FORWARD_TOL * scale:
        links.append(("T-zero-forces-eq", EQ_CONVERSE_TOL * scale - diff_norm, scale))
    else:
        links.append(("T-zero-forces-eq", None, None))
    return links, _pair_sample(a, b, p)


def _build_remark_chain(a, b, p):
    lam = p.need_lam()
    t_el = tsallis(a, b, lam)
    aba = quad_map(a, inverse(b))
    return _consecutive([("lower", a - aba), ("T", t_el), ("upper", -1.0 * a + b)])


def _build_iv_chain(t_before_iv):
    def build(a, b, p):
        lam, beta = p.need_lam(), p.need_beta()
        t_el = tsallis_lb(a, b, lam, beta)
        four = bound_expr_cached(BoundKind.IV, a, b, p)
        mids = [("T", t_el), ("IV", four)] if t_before_iv else [("IV", four), ("T", t_el)]
        exprs = (
            [("lower", _geo_diff(a, b, 0.0, beta)), ("lam-diff", _geo_diff(a, b, lam, beta))]
            + mids
            + [("upper", _geo_diff(a, b, 1.0, beta))]
        )
        return _consecutive(exprs)

    return build


# ---------------------------------------------------------------------------
# Scalar chain trials

_SCALAR_SPAN = math.log(1e3)


def _scalar_links(labels_values, tol):
    links = []
    for (la, va), (lb, vb) in zip(labels_values, labels_values[1:]):
        scale = max(1.0, abs(va), abs(vb))
        links.append((f"{la}<={lb}", vb - va, scale))
    return links


def _scalar_chain_trial(branch):
    def trial(algebra, rng, p, cond, tol, trial_index, negate):
        alpha, delta = p.need_alpha(), p.need_delta()
        # log-uniform x over three decades on the valid side of delta;
        # every eighth trial sits exactly on x = delta (equality edge)
        u = 0.0 if trial_index % 8 == 0 else rng.uniform(0.0, _SCALAR_SPAN)
        x = delta * math.exp(u if branch in ("a", "b") else -u)
        val = {
            fam.value: scalar_bound_eval(fam, x, alpha, delta) for fam in ScalarBoundFamily
        }
        s_one = scalar_bound_eval(ScalarBoundFamily.S_DELTA, x, alpha, 1.0)
        j_one = scalar_bound_eval(ScalarBoundFamily.J_DELTA, x, alpha, 1.0)
        if branch == "a":
            seq = [("r", val["r_delta"]), ("s", val["s_delta"]), ("q", val["q"]),
                   ("j", val["j_delta"]), ("k", val["k_delta"])]
            links = _scalar_links(seq, tol)
        elif branch == "c":
            seq = [("k", val["k_delta"]), ("j", val["j_delta"]), ("q", val["q"]),
                   ("s", val["s_delta"]), ("r", val["r_delta"])]
            links = _scalar_links(seq, tol)
        elif branch == "b":
            links = _scalar_links([("s1", s_one), ("s", val["s_delta"])], tol)
            links += _scalar_links([("j", val["j_delta"]), ("j1", j_one)], tol)
        else:
            links = _scalar_links([("s", val["s_delta"]), ("s1", s_one)], tol)
            links += _scalar_links([("j1", j_one), ("j", val["j_delta"])], tol)
        return links, {"x": x, "params": p.to_dict()}

    return trial


# ---------------------------------------------------------------------------
# Concavity / monotonicity trials

_T_SAMPLES = (0.25, 0.5, 0.75)


def _entropy_fn(p):
    if p.lam is not None:
        lam = p.need_lam()
        return lambda a, b: tsallis(a, b, lam)
    return rel_entropy


def _concave_slot_trial(slot):
    def trial(algebra, rng, p, cond, tol, trial_index, negate):
        fn = _entropy_fn(p)
        fixed = random_positive(algebra, cond, rng)
        x1 = random_positive(algebra, cond, rng)
        x2 = random_positive(algebra, cond, rng)
        t = _T_SAMPLES[trial_index % 3]
        links = []
        for label, tt in (("midpoint", 0.5), ("sampled-t", t)):
            mix = affine(x1, x2, 1.0 - tt, tt)
            if slot == 2:
                lhs = affine(fn(fixed, x1), fn(fixed, x2), 1.0 - tt, tt)
                rhs = fn(fixed, mix)
            else:
                lhs = affine(fn(x1, fixed), fn(x2, fixed), 1.0 - tt, tt)
                rhs = fn(mix, fixed)
            cert = loewner_leq(lhs, rhs, tol)
            links.append((label, cert.margin, cert.scale))
        sample = {
            "fixed": element_to_dict(fixed),
            "x1": element_to_dict(x1),
            "x2": element_to_dict(x2),
            "t": t,
            "params": p.to_dict(),
        }
        return links, sample

    return trial


def _joint_concave_trial(algebra, rng, p, cond, tol, trial_index, negate):
    fn = _entropy_fn(p)
    a1 = random_positive(algebra, cond, rng)
    b1 = random_positive(algebra, cond, rng)
    a2 = random_positive(algebra, cond, rng)
    b2 = random_positive(algebra, cond, rng)
    t = _T_SAMPLES[trial_index % 3]
    links = []
    for label, tt in (("midpoint", 0.5), ("sampled-t", t)):
        lhs = affine(fn(a1, b1), fn(a2, b2), 1.0 - tt, tt)
        rhs = fn(affine(a1, a2, 1.0 - tt, tt), affine(b1, b2, 1.0 - tt, tt))
        cert = loewner_leq(lhs, rhs, tol)
        links.append((label, cert.margin, cert.scale))
    sample = {
        "a1": element_to_dict(a1),
        "b1": element_to_dict(b1),
        "a2": element_to_dict(a2),
        "b2": element_to_dict(b2),
        "t": t,
        "params": p.to_dict(),
    }
    return links, sample


def _xlogx_concave_trial(algebra, rng, p, cond, tol, trial_index, negate):
    x1 = random_positive(algebra, cond, rng)
    x2 = random_positive(algebra, cond, rng)
    mid = affine(x1, x2, 0.5, 0.5)
    lhs = affine(
        func_calculus(x1, SF_NEG_XLOGX), func_calculus(x2, SF_NEG_XLOGX), 0.5, 0.5
    )
    cert = loewner_leq(lhs, func_calculus(mid, SF_NEG_XLOGX), tol)
    sample = {"x1": element_to_dict(x1), "x2": element_to_dict(x2)}
    return [("midpoint", cert.margin, cert.scale)], sample


def _monotone_slot2_trial(algebra, rng, p, cond, tol, trial_index, negate):
    fn = _entropy_fn(p)
    a = random_positive(algebra, cond, rng)
    b1 = random_positive(algebra, cond, rng)
    g2 = random_square(algebra, rng)
    eta = rng.uniform(0.0, 1.0) * jb_norm(b1) / max(1e-300, jb_norm(g2))
    b2 = b1 + eta * g2
    cert = loewner_leq(fn(a, b1), fn(a, b2), tol)
    sample = {
        "a": element_to_dict(a),
        "b1": element_to_dict(b1),
        "b2": element_to_dict(b2),
        "params": p.to_dict(),
    }
    return [("slot2", cert.margin, cert.scale)], sample


_MONOTONE_POWERS = (0.25, 0.5, 0.75)


def _op_monotone_trial(algebra, rng, p, cond, tol, trial_index, negate):
    a = random_positive(algebra, cond, rng)
    g2 = random_square(algebra, rng)
    eta = rng.uniform(0.0, 1.0) * jb_norm(a) / max(1e-300, jb_norm(g2))
    b = a + eta * g2
    links = []
    cert = loewner_leq(func_calculus(a, SF_LOG), func_calculus(b, SF_LOG), tol)
    links.append(("log", cert.margin, cert.scale))
    for pw in _MONOTONE_POWERS:
        cert = loewner_leq(power(a, pw), power(b, pw), tol)
        links.append((f"power-{pw}", cert.margin, cert.scale))
    sample = {"a": element_to_dict(a), "b": element_to_dict(b)}
    return links, sample


# ---------------------------------------------------------------------------
# Identity trials (margin = -relative deviation, scale = 1)

def _dev_links(label, got, want):
    dev = jb_norm(got - want) / max(1.0, jb_norm(want))
    return (label, -dev, 1.0)


def _homogeneity_trial(algebra, rng, p, cond, tol, trial_index, negate):
    a = random_positive(algebra, cond, rng)
    b = random_positive(algebra, cond, rng)
    c = math.exp(rng.uniform(math.log(0.3), math.log(3.0)))
    if p.lam is not None:
        fn = _entropy_fn(p)
        link = _dev_links("homogeneity", fn(c * a, c * b), c * fn(a, b))
    else:
        link = _dev_links("homogeneity", rel_entropy(c * a, c * b), c * rel_entropy(a, b))
    return [link], {"c": c, "a": element_to_dict(a), "b": element_to_dict(b)}


def _random_invertible(algebra, rng, trial_index):
    # alternate positive and negative-definite congruence elements; both are
    # invertible and {c x c} is insensitive to the overall sign
    c = random_positive(algebra, 10.0, rng)
    if trial_index % 2 == 1:
        c = c - (1.2 * spectrum(c).max) * identity(algebra)
    return c


def _congruence_trial(kind):
    def trial(algebra, rng, p, cond, tol, trial_index, negate):
        a = random_positive(algebra, cond, rng)
        b = random_positive(algebra, cond, rng)
        c = _random_invertible(algebra, rng, trial_index)
        ca, cb = congruence(c, a), congruence(c, b)
        if kind == "harm":
            t = (0.0, 1.0, None)[trial_index % 3]
            if t is None:
                t = rng.uniform(0.0, 1.0)
            link = _dev_links(
                "congruence",
                congruence(c, harmonic_mean(a, b, t)),
                harmonic_mean(ca, cb, t),
            )
        elif kind == "T":
            lam = p.need_lam()
            link = _dev_links(
                "congruence",
                congruence(c, tsallis(a, b, lam)),
                tsallis(ca, cb, lam),
            )
        else:
            link = _dev_links(
                "congruence",
                congruence(c, rel_entropy(a, b)),
                rel_entropy(ca, cb),
            )
        sample = {"a": element_to_dict(a), "b": element_to_dict(b), "c": element_to_dict(c)}
        return [link], sample

    return trial


def _reduction_trial(which):
    def trial(algebra, rng, p, cond, tol, trial_index, negate):
        a = random_positive(algebra, cond, rng)
        b = random_positive(algebra, cond, rng)
        if which == "s01":
            link = _dev_links("S_(0,1)=S", rel_entropy_ab(a, b, 0.0, 1.0), rel_entropy(a, b))
        elif which == "tl1":
            lam = p.need_lam()
            link = _dev_links(
                "T_(lam,1)=T_lam", tsallis_lb(a, b, lam, 1.0), tsallis(a, b, lam)
            )
        else:
            link = _dev_links("xlogx-route", rel_entropy_xlogx(a, b), rel_entropy(a, b))
        return [link], _pair_sample(a, b, p)

    return trial


def _integral_trial(which):
    def trial(algebra, rng, p, cond, tol, trial_index, negate):
        a = random_positive(algebra, cond, rng)
        b = random_positive(algebra, cond, rng)
        config = QuadratureConfig(nodes=128)
        if which == "S":
            link = _dev_links("quadrature-vs-closed-form", quad_integral_S(a, b, config),
                              rel_entropy(a, b))
        elif which == "T":
            lam = p.need_lam()
            link = _dev_links("quadrature-vs-closed-form", quad_integral_T(a, b, lam, config),
                              tsallis(a, b, lam))
        else:
            lam = p.need_lam()
            link = _dev_links("quadrature-vs-closed-form", quad_integral_geo(a, b, lam, config),
                              geometric_mean(a, b, lam))
        return [link], _pair_sample(a, b, p)

    return trial


def _weight_norm_trial(algebra, rng, p, cond, tol, trial_index, negate):
    lam = p.need_lam() if trial_index % 2 == 0 else rng.uniform(0.05, 0.95)
    _, w = gauss_jacobi_entropy(128, lam)
    want = weight_normalization(lam)
    dev = abs(float(np.sum(w)) - want) / want
    return [("weight-sum", -dev, 1.0)], {"lambda": lam}


_LIMIT_LAMS = (1e-2, 1e-3, 1e-4)


def _tsallis_limit_trial(algebra, rng, p, cond, tol, trial_index, negate):
    # successive deviations ||T_lam - S|| must shrink linearly in lam:
    # ratios of consecutive deviations sit in [5, 20] for a 10x lam step
    a = random_positive(algebra, cond, rng)
    b = random_positive(algebra, cond, rng)
    s = rel_entropy(a, b)
    devs = [jb_norm(tsallis(a, b, lam) - s) for lam in _LIMIT_LAMS]
    links = []
    for i in range(len(devs) - 1):
        ratio = devs[i] / max(devs[i + 1], 1e-300)
        off = max(0.0, (5.0 - ratio) / 5.0, (ratio - 20.0) / 20.0)
        links.append((f"ratio-{_LIMIT_LAMS[i]:g}/{_LIMIT_LAMS[i + 1]:g}", -off, 1.0))
    return links, _pair_sample(a, b, p)


def _bound_reduction_trial(algebra, rng, p, cond, tol, trial_index, negate):
    # generic bound expressions at alpha=0, beta=1 against their closed
    # reduced forms; a dual-route consistency check
    a = random_positive(algebra, cond, rng)
    b = random_positive(algebra, cond, rng)
    delta = p.need_delta()
    table = _delta_reduced_exprs(a, b, delta)
    p01 = EntropyParams(alpha=0.0, beta=1.0, delta=delta)
    aba, geo_half = _reduced_core(a, b)
    links = [
        _dev_links("I", bound_expr_cached(BoundKind.I, a, b, p01), table["I-red"]),
        _dev_links(
            "II",
            bound_expr_cached(BoundKind.II, a, b, p01),
            4.0 * a - 8.0 * quad_map(a, inverse(geo_half + a)),
        ),
        _dev_links(
            "III",
            bound_expr_cached(BoundKind.III, a, b, p01),
            geo_half - geometric_mean(a, b, -0.5),
        ),
        _dev_links("V", bound_expr_cached(BoundKind.V, a, b, p01), 0.5 * (b - aba)),
        _dev_links("Id", bound_expr_cached(BoundKind.I_DELTA, a, b, p01), table["Id-red"]),
        _dev_links("IId", bound_expr_cached(BoundKind.II_DELTA, a, b, p01), table["IId-red"]),
        _dev_links("IIId", bound_expr_cached(BoundKind.III_DELTA, a, b, p01), table["IIId-red"]),
        _dev_links("Vd", bound_expr_cached(BoundKind.V_DELTA, a, b, p01), table["Vd-red"]),
    ]
    beta = p.need_beta()
    a_pow = power(a, beta)
    links.append(
        _dev_links(
            "tsallis-lower", _geo_diff(a, b, 0.0, beta), a_pow - quad_map(a_pow, inverse(b))
        )
    )
    links.append(_dev_links("tsallis-upper", _geo_diff(a, b, 1.0, beta), b - a_pow))
    return links, _pair_sample(a, b, p)


# ---------------------------------------------------------------------------
# The registry

def _entries() -> tuple[RegistryEntry, ...]:
    ab_grid = _grid(alphas=ALPHA_GRID, betas=BETA_GRID)
    lam_beta_grid = _grid(betas=BETA_GRID, lams=LAM_GRID)
    beta1_grid = _grid(alphas=(0.0,), betas=(1.0,))
    delta_up = _grid(alphas=ALPHA_GRID, betas=BETA_GRID, deltas=DELTA_UP_GRID)
    delta_down = _grid(alphas=ALPHA_GRID, betas=BETA_GRID, deltas=DELTA_DOWN_GRID)
    out = [
        RegistryEntry(
            "prop4.3i", "order",
            "geo-diff(alpha) <= I <= geo-diff(alpha+1) for positive pairs",
            ab_grid, _chain_trial("none", _build_sandwich_lower_upper(BoundKind.I)),
        ),
        RegistryEntry(
            "prop4.3ii", "order",
            "geo-diff(alpha) <= V <= geo-diff(alpha+1) for positive pairs",
            ab_grid, _chain_trial("none", _build_sandwich_lower_upper(BoundKind.V)),
        ),
        RegistryEntry(
            "prop4.3iii", "order",
            "geo-diff is monotone in alpha from its alpha=0 base",
            ab_grid, _chain_trial("none", _build_geo_diff_monotone),
        ),
        RegistryEntry(
            "prop4.5a", "order",
            "scalar chain r <= s <= q <= j <= k on x >= delta >= 1",
            _grid(alphas=ALPHA_GRID, deltas=DELTA_UP_GRID),
            _scalar_chain_trial("a"), backends=("scalar",),
        ),
        RegistryEntry(
            "prop4.5b", "order",
            "scalar rescaling: s_1 <= s_delta and j_delta <= j_1 on x >= delta >= 1",
            _grid(alphas=ALPHA_GRID, deltas=DELTA_UP_GRID),
            _scalar_chain_trial("b"), backends=("scalar",),
        ),
        RegistryEntry(
            "prop4.5c", "order",
            "scalar chain k <= j <= q <= s <= r on x <= delta <= 1",
            _grid(alphas=ALPHA_GRID, deltas=DELTA_DOWN_GRID),
            _scalar_chain_trial("c"), backends=("scalar",),
        ),
        RegistryEntry(
            "prop4.5d", "order",
            "scalar rescaling: s_delta <= s_1 and j_1 <= j_delta on x <= delta <= 1",
            _grid(alphas=ALPHA_GRID, deltas=DELTA_DOWN_GRID),
            _scalar_chain_trial("d"), backends=("scalar",),
        ),
        RegistryEntry(
            "thm4.6i", "order",
            "I <= II <= S <= III <= V when a^beta <= b",
            ab_grid, _chain_trial("leq", _build_sandwich(True)),
            negative_control=True,
        ),
        RegistryEntry(
            "thm4.6ii", "order",
            "V <= III <= S <= II <= I when a^beta >= b",
            ab_grid, _chain_trial("geq", _build_sandwich(False)),
            negative_control=True,
        ),
        RegistryEntry(
            "cor4.7i", "order",
            "geo-diff sandwich around I..V when a^beta <= b",
            ab_grid, _chain_trial("leq", _build_sandwich_extended(True)),
            negative_control=True,
        ),
        RegistryEntry(
            "cor4.7ii", "order",
            "geo-diff sandwich around V..I when a^beta >= b",
            ab_grid, _chain_trial("geq", _build_sandwich_extended(False)),
            negative_control=True,
        ),
        RegistryEntry(
            "cor4.8i", "order",
            "reduced alpha=0, beta=1 chain (ascending) when a <= b",
            beta1_grid, _chain_trial("leq", _build_reduced_chain(True)),
            negative_control=True,
        ),
        RegistryEntry(
            "cor4.8ii", "order",
            "reduced alpha=0, beta=1 chain (descending) when a >= b",
            beta1_grid, _chain_trial("geq", _build_reduced_chain(False)),
            negative_control=True,
        ),
        RegistryEntry(
            "thm4.9i", "order",
            "Id <= IId <= S <= IIId <= Vd when delta >= 1 and delta a^beta <= b",
            delta_up, _chain_trial("delta-leq", _build_delta_sandwich(True)),
            negative_control=True,
        ),
        RegistryEntry(
            "thm4.9ii", "order",
            "delta refinement II <= IId and IIId <= III for delta >= 1",
            delta_up, _chain_trial("delta-leq", _build_delta_refines(True)),
        ),
        RegistryEntry(
            "thm4.9iii", "order",
            "Vd <= IIId <= S <= IId <= Id when delta <= 1 and delta a^beta >= b",
            delta_down, _chain_trial("delta-geq", _build_delta_sandwich(False)),
            negative_control=True,
        ),
        RegistryEntry(
            "thm4.9iv", "order",
            "delta refinement IId <= II and III <= IIId for delta <= 1",
            delta_down, _chain_trial("delta-geq", _build_delta_refines(False)),
        ),
        RegistryEntry(
            "cor-delta-i", "order",
            "nine-expression reduced delta chain when delta >= 1 and delta a <= b",
            _grid(deltas=DELTA_UP_GRID), _chain_trial("delta-leq", _build_delta_reduced(_DELTA_CHAIN_UP)),
            negative_control=True,
        ),
        RegistryEntry(
            "cor-delta-ii", "order",
            "nine-expression reduced delta chain when delta <= 1 and delta a >= b",
            _grid(deltas=DELTA_DOWN_GRID), _chain_trial("delta-geq", _build_delta_reduced(_DELTA_CHAIN_DOWN)),
            negative_control=True,
        ),
        RegistryEntry(
            "tsallis-order", "order",
            "T_(-lam, beta) <= S_(0, beta) <= T_(lam, beta) for positive pairs",
            lam_beta_grid, _chain_trial("none", _build_tsallis_order),
        ),
        RegistryEntry(
            "tsallis-bounds", "order",
            "geo-diff bounds for T_(lam, beta) plus the T=0 equality case",
            lam_beta_grid, _tsallis_bounds_trial,
        ),
        RegistryEntry(
            "remark-beta1", "order",
            "a - {a b^-1 a} <= T_lam <= b - a at beta = 1",
            _grid(lams=LAM_GRID), _chain_trial("none", _build_remark_chain),
        ),
        RegistryEntry(
            "iv-prop-i", "order",
            "refined Tsallis bounds with T <= IV when a^beta <= b",
            lam_beta_grid, _chain_trial("leq", _build_iv_chain(True)),
            negative_control=True,
        ),
        RegistryEntry(
            "iv-prop-ii", "order",
            "refined Tsallis bounds with IV <= T when a^beta >= b",
            lam_beta_grid, _chain_trial("geq", _build_iv_chain(False)),
            negative_control=True,
        ),
        # order-theoretic properties
        RegistryEntry(
            "monotone-S", "order",
            "S(a|.) is monotone in its second slot",
            _grid(), _monotone_slot2_trial,
        ),
        RegistryEntry(
            "monotone-T", "order",
            "T_lam(a|.) is monotone in its second slot",
            _grid(lams=LAM_GRID), _monotone_slot2_trial,
        ),
        RegistryEntry(
            "concave-S-slot1", "order",
            "midpoint/sampled-t concavity of S in the first slot",
            _grid(), _concave_slot_trial(1),
        ),
        RegistryEntry(
            "concave-S-slot2", "order",
            "midpoint/sampled-t concavity of S in the second slot",
            _grid(), _concave_slot_trial(2),
        ),
        RegistryEntry(
            "concave-T-slot1", "order",
            "midpoint/sampled-t concavity of T_lam in the first slot",
            _grid(lams=LAM_GRID), _concave_slot_trial(1),
        ),
        RegistryEntry(
            "concave-T-slot2", "order",
            "midpoint/sampled-t concavity of T_lam in the second slot",
            _grid(lams=LAM_GRID), _concave_slot_trial(2),
        ),
        RegistryEntry(
            "joint-concave-S", "order",
            "joint midpoint/sampled-t concavity of S (special algebras)",
            _grid(), _joint_concave_trial, backends=("sym", "spin"),
        ),
        RegistryEntry(
            "joint-concave-T", "order",
            "joint midpoint/sampled-t concavity of T_lam (special algebras)",
            _grid(lams=LAM_GRID), _joint_concave_trial, backends=("sym", "spin"),
        ),
        RegistryEntry(
            "xlogx-concave", "order",
            "midpoint operator concavity of x -> -x log x",
            _grid(), _xlogx_concave_trial,
        ),
        RegistryEntry(
            "op-monotone", "order",
            "log and fractional powers preserve the order (spot checks)",
            _grid(), _op_monotone_trial,
        ),
        RegistryEntry(
            "explore-joint-concave-albert", "order",
            "exploratory: joint concavity of S on the exceptional algebra",
            _grid(), _joint_concave_trial, backends=("albert",),
            in_all=False, default_trials=200,
        ),
        # identities
        RegistryEntry(
            "homogeneity-S", "identity",
            "S(c a | c b) = c S(a|b)", _grid(), _homogeneity_trial,
        ),
        RegistryEntry(
            "homogeneity-T", "identity",
            "T_lam(c a | c b) = c T_lam(a|b)", _grid(lams=LAM_GRID), _homogeneity_trial,
        ),
        RegistryEntry(
            "congruence-S", "identity",
            "S({cac}|{cbc}) = {c S(a|b) c} for invertible c",
            _grid(), _congruence_trial("S"),
        ),
        RegistryEntry(
            "congruence-T", "identity",
            "T_lam({cac}|{cbc}) = {c T_lam(a|b) c} for invertible c",
            _grid(lams=LAM_GRID), _congruence_trial("T"),
        ),
        RegistryEntry(
            "congruence-harm", "identity",
            "{c (a !_t b) c} = {cac} !_t {cbc} for invertible c",
            _grid(), _congruence_trial("harm"),
        ),
        RegistryEntry(
            "s01-reduction", "identity",
            "S_(0,1) equals S", _grid(), _reduction_trial("s01"),
        ),
        RegistryEntry(
            "tl1-reduction", "identity",
            "T_(lam,1) equals T_lam", _grid(lams=LAM_GRID), _reduction_trial("tl1"),
        ),
        RegistryEntry(
            "xlogx-form", "identity",
            "S via the -x log x cross form equals the direct route",
            _grid(), _reduction_trial("xlogx"),
        ),
        RegistryEntry(
            "integral-S", "identity",
            "128-node quadrature for S matches the closed form",
            _grid(), _integral_trial("S"),
            default_trials=12, default_tol=1e-6, default_cond=100.0,
            dims_override={"sym": (2, 3, 4, 6), "spin": (1, 2, 4), "albert": (3,)},
        ),
        RegistryEntry(
            "integral-T", "identity",
            "128-node singular-weight quadrature for T_lam matches the closed form",
            _grid(lams=LAM_OPEN_GRID), _integral_trial("T"),
            default_trials=12, default_tol=1e-6, default_cond=100.0,
            dims_override={"sym": (2, 3, 4, 6), "spin": (1, 2, 4), "albert": (3,)},
        ),
        RegistryEntry(
            "integral-geo", "identity",
            "128-node singular-weight quadrature for #_lam matches the closed form",
            _grid(lams=LAM_OPEN_GRID), _integral_trial("geo"),
            default_trials=12, default_tol=1e-6, default_cond=100.0,
            dims_override={"sym": (2, 3, 4, 6), "spin": (1, 2, 4), "albert": (3,)},
        ),
        RegistryEntry(
            "weight-norm", "identity",
            "singular weight integrates to pi/sin(lam pi)",
            _grid(lams=LAM_OPEN_GRID), _weight_norm_trial,
            backends=("scalar",), default_trials=64, default_tol=1e-8,
        ),
        RegistryEntry(
            "tsallis-limit", "identity",
            "||T_lam - S|| shrinks linearly as lam -> 0 (ratio in [5, 20])",
            _grid(), _tsallis_limit_trial, default_trials=100,
        ),
        RegistryEntry(
            "bound-reduction", "identity",
            "generic bound expressions match their reduced closed forms",
            _grid(betas=BETA_GRID, deltas=(0.2, 0.5, 1.0, 2.0, 5.0)),
            # routes disagree by ~eps * cond^3 at beta = 2, so the operand
            # spread stays modest here
            _bound_reduction_trial, default_trials=100, default_cond=100.0,
        ),
    ]
    return tuple(out)


_REGISTRY = {e.entry_id: e for e in _entries()}
_ID_CRC = {e.entry_id: zlib.crc32(e.entry_id.encode()) for e in _entries()}


def get_entry(entry_id: str) -> RegistryEntry:
    try:
        return _REGISTRY[entry_id]
    except KeyError:
        raise UnknownIdError(entry_id) from None


def chain_ids() -> tuple[str, ...]:
    return tuple(e.entry_id for e in _entries() if e.mode == "order")


def identity_ids() -> tuple[str, ...]:
    return tuple(e.entry_id for e in _entries() if e.mode == "identity")


def all_ids() -> tuple[str, ...]:
    return tuple(e.entry_id for e in _entries())


def default_run_ids() -> tuple[str, ...]:
    return tuple(e.entry_id for e in _entries() if e.in_all)


def negative_control_ids() -> tuple[str, ...]:
    return tuple(e.entry_id for e in _entries() if e.negative_control)


# ---------------------------------------------------------------------------
# Campaign runner

def _one_trial(entry, kind, dims, trial_index, seed, cond, tol, negate):
    rng = np.random.default_rng(
        np.random.SeedSequence([seed, _ID_CRC[entry.entry_id], trial_index])
    )
    p = entry.grid[trial_index % len(entry.grid)]
    if kind == "scalar":
        algebra = None
    else:
        dim = dims[(trial_index // len(entry.grid)) % len(dims)]
        algebra = _descriptor(kind, dim)
    links, sample = entry.trial(algebra, rng, p, cond, tol, trial_index, negate)
    normalized = [
        (label, None if margin is None else margin / scale)
        for label, margin, scale in links
    ]
    return trial_index, normalized, sample


def _trial_range(args):
    entry_id, kind, dims, lo, hi, seed, cond, tol, negate = args
    entry = get_entry(entry_id)
    return [
        _one_trial(entry, kind, dims, t, seed, cond, tol, negate) for t in range(lo, hi)
    ]


def _threads_from_env() -> int:
    raw = os.environ.get("JE_THREADS", "").strip()
    if not raw:
        return 0
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


@dataclass(frozen=True)
class ChainReport:
    """Per-entry verification outcome; serializes to deterministic JSON."""

    theorem_id: str
    backend: dict
    trials: int
    tol: float
    seed: int
    params: dict
    links: tuple
    violations: tuple

    def failing_links(self) -> int:
        return sum(
            1
            for l in self.links
            if l["worst_margin"] is not None and not l["worst_margin"] >= -self.tol
        )

    @property
    def passed(self) -> bool:
        return self.failing_links() == 0

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "backend": self.backend,
            "trials": self.trials,
            "tol": self.tol,
            "links": list(self.links),
            "violations": list(self.violations),
            "seed": self.seed,
            "params": self.params,
        }

    def to_json(self) -> str:
        return report_dumps(self.to_dict())


def report_from_dict(d: dict) -> ChainReport:
    try:
        return ChainReport(
            theorem_id=d["theorem_id"],
            backend=dict(d["backend"]),
            trials=int(d["trials"]),
            tol=float(d["tol"]),
            seed=int(d["seed"]),
            params=dict(d.get("params", {})),
            links=tuple(dict(l) for l in d["links"]),
            violations=tuple(dict(v) for v in d.get("violations", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportFormatError("<dict>", str(exc)) from None


def run_entry(
    entry_id: str,
    backend: str | None = None,
    *,
    dims=None,
    trials: int | None = None,
    cond: float | None = None,
    seed: int = 0,
    tol: float | None = None,
    negate: bool = False,
    threads: int | None = None,
) -> ChainReport:
    """Run one registry entry and reduce its trials to a ChainReport."""
    entry = get_entry(entry_id)
    if "scalar" in entry.backends:
        kind = "scalar"
        dims = (1,)
    else:
        kind = backend or entry.backends[0]
        if kind not in entry.backends:
            raise ParameterError(
                f"entry {entry_id!r} supports backends {entry.backends}, got {kind!r}"
            )
        if dims is None:
            dims = (entry.dims_override or DEFAULT_DIMS)[kind]
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise ParameterError("dims must be nonempty")
    if negate and not entry.negative_control:
        raise ParameterError(f"entry {entry_id!r} is not a negative-control entry")
    trials = entry.default_trials if trials is None else int(trials)
    if trials <= 0:
        raise ParameterError(f"trials must be positive, got {trials}")
    tol = entry.default_tol if tol is None else float(tol)
    if cond is None:
        cond = NEGATE_COND if negate else entry.default_cond
    threads = _threads_from_env() if threads is None else threads

    if threads and threads > 1:
        chunk = max(1, -(-trials // threads))
        ranges = [
            (entry_id, kind, dims, lo, min(lo + chunk, trials), seed, cond, tol, negate)
            for lo in range(0, trials, chunk)
        ]
        results = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_trial_range, ranges):
                results.extend(part)
    else:
        results = _trial_range(
            (entry_id, kind, dims, 0, trials, seed, cond, tol, negate)
        )

    # reduce in trial order; labels come from the first trial and are stable
    # across trials by construction
    label_order: list[str] = []
    worst: dict[str, float] = {}
    argmin: dict[str, int] = {}
    violations: list[dict] = []
    for trial_index, links, sample in results:
        for label, margin in links:
            if label not in worst:
                label_order.append(label)
                worst[label] = math.inf
                argmin[label] = -1
            if margin is None:
                continue
            if not math.isfinite(margin):
                margin = -math.inf
            if margin < worst[label] or argmin[label] < 0:
                worst[label] = margin
                argmin[label] = trial_index
            if margin < -tol and len(violations) < VIOLATION_CAP:
                violations.append(
                    {
                        "trial": trial_index,
                        "link": label,
                        "margin": margin,
                        "sample": sample,
                    }
                )
    link_rows = tuple(
        {
            "label": label,
            "worst_margin": None if argmin[label] < 0 else worst[label],
            "argmin_trial": None if argmin[label] < 0 else argmin[label],
        }
        for label in label_order
    )
    backend_dict = {"algebra": kind, "dims": list(dims)}
    return ChainReport(
        theorem_id=entry_id,
        backend=backend_dict,
        trials=trials,
        tol=tol,
        seed=seed,
        params={"cond": float(cond), "negate": bool(negate), "grid_size": len(entry.grid)},
        links=link_rows,
        violations=tuple(violations),
    )


def verify_chain(
    theorem_id: str,
    backend: str | None = None,
    trials: int | None = None,
    dims=None,
    cond: float | None = None,
    seed: int = 0,
    tol: float | None = None,
    *,
    negate: bool = False,
    threads: int | None = None,
) -> ChainReport:
    entry = get_entry(theorem_id)
    if entry.mode != "order":
        raise UnknownIdError(theorem_id)
    return run_entry(
        theorem_id, backend, dims=dims, trials=trials, cond=cond, seed=seed,
        tol=tol, negate=negate, threads=threads,
    )


def verify_identity(
    identity_id: str,
    backend: str | None = None,
    trials: int | None = None,
    seed: int = 0,
    tol: float | None = None,
    *,
    dims=None,
    cond: float | None = None,
    threads: int | None = None,
) -> ChainReport:
    entry = get_entry(identity_id)
    if entry.mode != "identity":
        raise UnknownIdError(identity_id)
    return run_entry(
        identity_id, backend, dims=dims, trials=trials, cond=cond, seed=seed,
        tol=tol, threads=threads,
    )


# ---------------------------------------------------------------------------
# Deterministic JSON emission (17 significant digits for floats)

def _format_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        f = float(v)
        if not math.isfinite(f):
            raise ValueError(f"non-finite value {f!r} cannot go into a report")
        return format(f, ".17g")
    if isinstance(v, str):
        import json

        return json.dumps(v)
    raise TypeError(f"unsupported report value {type(v).__name__}")


def report_dumps(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f"{inner}{_format_scalar(str(k))}: {report_dumps(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{inner}{report_dumps(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    return _format_scalar(obj)
