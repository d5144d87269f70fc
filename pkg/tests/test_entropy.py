"""Entropy functionals, means, bound expressions, and their scalar anchors."""

import math

import numpy as np
import pytest

from conftest import ALL_ALGEBRAS, rel_err
from jbalg import (
    BoundKind,
    EntropyParams,
    ParameterError,
    PositivityError,
    ScalarBoundFamily,
    ab_geometric_mean,
    bound_expr,
    congruence,
    element,
    geometric_mean,
    harmonic_mean,
    ln_lambda,
    perspective,
    quad_map,
    random_positive,
    rel_entropy,
    rel_entropy_ab,
    rel_entropy_xlogx,
    scalar_bound_eval,
    sym_matrix,
    tsallis,
    tsallis_lb,
)
from jbalg.elements import SF_IDENTITY, SF_LOG

SCALAR = sym_matrix(1)
E = math.e


def scalar(v):
    return element(SCALAR, [float(v)])


def as_float(el):
    assert el.algebra is SCALAR or el.algebra.coord_count == 1
    return float(el.coords[0])


def positive_pair(algebra, seed, cond=50.0):
    return (
        random_positive(algebra, cond=cond, seed=seed),
        random_positive(algebra, cond=cond, seed=seed + 1000),
    )


# ---------------------------------------------------------------------------
# Pinned scalar values

def test_rel_entropy_scalar_values():
    assert as_float(rel_entropy(scalar(1.0), scalar(E))) == pytest.approx(1.0, rel=1e-14)
    a, b = 2.0, 6.0
    want = a * math.log(b / a)
    assert as_float(rel_entropy(scalar(a), scalar(b))) == pytest.approx(want, rel=1e-14)
    # S(a|a) = 0 exactly up to roundoff
    assert abs(as_float(rel_entropy(scalar(3.0), scalar(3.0)))) <= 1e-14


def test_tsallis_scalar_values():
    assert as_float(tsallis(scalar(1.0), scalar(E), 1.0)) == pytest.approx(
        E - 1.0, rel=1e-14
    )
    # lambda -> 0 limit recovers the relative entropy
    got = as_float(tsallis(scalar(2.0), scalar(5.0), 1e-7))
    want = 2.0 * math.log(2.5)
    assert got == pytest.approx(want, rel=1e-6)


def test_tsallis_lb_scalar_values():
    assert as_float(tsallis_lb(scalar(1.0), scalar(E), -1.0, 1.0)) == pytest.approx(
        1.0 - 1.0 / E, rel=1e-14
    )
    # (x^lam - 1)/lam is increasing in lam at fixed x
    lo = as_float(tsallis_lb(scalar(1.0), scalar(4.0), -0.8, 1.0))
    mid = as_float(rel_entropy(scalar(1.0), scalar(4.0)))
    hi = as_float(tsallis_lb(scalar(1.0), scalar(4.0), 0.8, 1.0))
    assert lo < mid < hi


def test_ln_lambda_scalar():
    assert ln_lambda(E, 1.0) == pytest.approx(E - 1.0, rel=1e-15)
    assert ln_lambda(2.0, 1e-9) == pytest.approx(math.log(2.0), rel=1e-7)
    with pytest.raises(ParameterError):
        ln_lambda(2.0, 0.0)
    with pytest.raises(ParameterError):
        ln_lambda(-1.0, 0.5)


def test_means_scalar_values():
    assert as_float(geometric_mean(scalar(1.0), scalar(9.0), 0.5)) == pytest.approx(3.0)
    assert as_float(geometric_mean(scalar(2.0), scalar(8.0), 0.0)) == pytest.approx(2.0)
    assert as_float(geometric_mean(scalar(2.0), scalar(8.0), 1.0)) == pytest.approx(8.0)
    # harmonic mean of 2 and 6 at t = 1/2 is 3
    assert as_float(harmonic_mean(scalar(2.0), scalar(6.0), 0.5)) == pytest.approx(3.0)
    assert as_float(harmonic_mean(scalar(5.0), scalar(7.0), 0.0)) == pytest.approx(5.0)


def test_scalar_bound_family_pinned_values():
    cases = {
        ScalarBoundFamily.R_DELTA: 2.0 / 3.0,
        ScalarBoundFamily.S_DELTA: 12.0 - 8.0 * math.sqrt(2.0),
        ScalarBoundFamily.Q: math.log(2.0),
        ScalarBoundFamily.J_DELTA: 1.0 / math.sqrt(2.0),
        ScalarBoundFamily.K_DELTA: 0.75,
    }
    for family, want in cases.items():
        assert scalar_bound_eval(family, 2.0, 0.0, 1.0) == pytest.approx(
            want, rel=1e-14
        ), family


def test_scalar_bound_eval_rejects_bad_parameters():
    f = ScalarBoundFamily.Q
    with pytest.raises(ParameterError):
        scalar_bound_eval(f, -1.0, 0.0, 1.0)
    with pytest.raises(ParameterError):
        scalar_bound_eval(f, 2.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        scalar_bound_eval(f, 2.0, -0.5, 1.0)


# ---------------------------------------------------------------------------
# The operator bounds restricted to scalars reproduce their generating
# profiles x^alpha * (scalar family)

_FAMILY_OF_KIND = {
    BoundKind.I_DELTA: ScalarBoundFamily.R_DELTA,
    BoundKind.II_DELTA: ScalarBoundFamily.S_DELTA,
    BoundKind.III_DELTA: ScalarBoundFamily.J_DELTA,
    BoundKind.V_DELTA: ScalarBoundFamily.K_DELTA,
}


@pytest.mark.parametrize("kind,family", sorted(_FAMILY_OF_KIND.items(), key=lambda i: i[0].value))
def test_delta_bounds_restrict_to_scalar_families(kind, family):
    for x in (0.3, 1.0, 2.0, 7.5):
        for alpha in (0.0, 0.5, 1.3):
            for delta in (0.25, 1.0, 3.0):
                params = EntropyParams(alpha=alpha, beta=1.0, delta=delta)
                got = as_float(bound_expr(kind, scalar(1.0), scalar(x), params))
                want = scalar_bound_eval(family, x, alpha, delta)
                assert got == pytest.approx(want, rel=1e-12, abs=1e-13), (x, alpha, delta)


def test_rel_entropy_ab_restricts_to_q_profile():
    for x in (0.4, 3.0):
        for alpha in (0.0, 0.7):
            got = as_float(rel_entropy_ab(scalar(1.0), scalar(x), alpha, 1.0))
            want = scalar_bound_eval(ScalarBoundFamily.Q, x, alpha, 1.0)
            assert got == pytest.approx(want, rel=1e-13, abs=1e-14)


# ---------------------------------------------------------------------------
# Structural identities on every backend

@pytest.mark.parametrize("algebra", ALL_ALGEBRAS, ids=str)
def test_homogeneity(algebra):
    a, b = positive_pair(algebra, seed=21)
    t = 2.75
    assert rel_err(rel_entropy(t * a, t * b), t * rel_entropy(a, b)) <= 1e-10
    assert rel_err(tsallis(t * a, t * b, 0.6), t * tsallis(a, b, 0.6)) <= 1e-10


@pytest.mark.parametrize("algebra", ALL_ALGEBRAS, ids=str)
def test_congruence_invariance(algebra):
    a, b = positive_pair(algebra, seed=33)
    c = random_positive(algebra, cond=10.0, seed=77)
    lhs = congruence(c, rel_entropy(a, b))
    rhs = rel_entropy(quad_map(c, a), quad_map(c, b))
    assert rel_err(lhs, rhs) <= 1e-9
    lhs = congruence(c, harmonic_mean(a, b, 0.4))
    rhs = harmonic_mean(quad_map(c, a), quad_map(c, b), 0.4)
    assert rel_err(lhs, rhs) <= 1e-9


@pytest.mark.parametrize("algebra", ALL_ALGEBRAS, ids=str)
def test_parameter_reductions(algebra):
    a, b = positive_pair(algebra, seed=45)
    assert rel_err(rel_entropy_ab(a, b, 0.0, 1.0), rel_entropy(a, b)) <= 1e-11
    for lam in (0.3, 1.0):
        assert rel_err(tsallis_lb(a, b, lam, 1.0), tsallis(a, b, lam)) <= 1e-11
    assert rel_err(ab_geometric_mean(a, b, 0.5, 1.0), geometric_mean(a, b, 0.5)) <= 1e-12


@pytest.mark.parametrize("algebra", ALL_ALGEBRAS, ids=str)
def test_xlogx_dual_form_agrees(algebra):
    a, b = positive_pair(algebra, seed=58)
    assert rel_err(rel_entropy_xlogx(a, b), rel_entropy(a, b)) <= 1e-10


@pytest.mark.parametrize("algebra", ALL_ALGEBRAS, ids=str)
def test_perspective_generalizes_rel_entropy(algebra):
    a, b = positive_pair(algebra, seed=64)
    got = perspective(SF_LOG, SF_IDENTITY, b, a)
    assert rel_err(got, rel_entropy(a, b)) <= 1e-11


def test_delta_bounds_reduce_at_delta_one():
    reductions = [
        (BoundKind.I_DELTA, BoundKind.I),
        (BoundKind.II_DELTA, BoundKind.II),
        (BoundKind.III_DELTA, BoundKind.III),
        (BoundKind.V_DELTA, BoundKind.V),
    ]
    for algebra in ALL_ALGEBRAS[:4]:
        a, b = positive_pair(algebra, seed=71)
        pd = EntropyParams(alpha=0.8, beta=1.5, delta=1.0)
        p = EntropyParams(alpha=0.8, beta=1.5)
        for dkind, kind in reductions:
            lhs = bound_expr(dkind, a, b, pd)
            rhs = bound_expr(kind, a, b, p)
            assert rel_err(lhs, rhs) <= 1e-10, (algebra, dkind)


# ---------------------------------------------------------------------------
# Parameter and domain guards

def test_parameter_guards():
    a, b = scalar(2.0), scalar(3.0)
    with pytest.raises(ParameterError):
        tsallis(a, b, 0.0)
    with pytest.raises(ParameterError):
        tsallis(a, b, 1.2)
    with pytest.raises(ParameterError):
        tsallis_lb(a, b, 0.0, 1.0)
    with pytest.raises(ParameterError):
        tsallis_lb(a, b, 1.5, 1.0)
    with pytest.raises(ParameterError):
        tsallis_lb(a, b, 0.5, 0.0)
    with pytest.raises(ParameterError):
        rel_entropy_ab(a, b, -0.1, 1.0)
    with pytest.raises(ParameterError):
        rel_entropy_ab(a, b, 0.5, -1.0)
    with pytest.raises(ParameterError):
        ab_geometric_mean(a, b, 0.5, 0.0)
    with pytest.raises(ParameterError):
        geometric_mean(a, b, 2.5)
    with pytest.raises(ParameterError):
        harmonic_mean(a, b, 1.5)


def test_entropy_params_guards():
    p = EntropyParams(alpha=0.5)
    assert p.need_alpha() == 0.5
    with pytest.raises(ParameterError):
        p.need_beta()
    with pytest.raises(ParameterError):
        EntropyParams(alpha=-1.0).need_alpha()
    with pytest.raises(ParameterError):
        EntropyParams(lam=0.0).need_lam()
    with pytest.raises(ParameterError):
        EntropyParams(delta=-2.0).need_delta()


def test_positivity_guard_on_operands():
    indef = element(sym_matrix(2), [1.0, 0.0, -1.0])
    pos = element(sym_matrix(2), [1.0, 0.0, 1.0])
    with pytest.raises(PositivityError):
        rel_entropy(indef, pos)
    with pytest.raises(PositivityError):
        rel_entropy(pos, indef)
    with pytest.raises(PositivityError):
        geometric_mean(indef, pos, 0.5)
