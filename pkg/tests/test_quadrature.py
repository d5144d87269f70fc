"""Quadrature rules against scipy references and the integral representations
against their closed forms."""

import math

import numpy as np
import pytest
from scipy.special import roots_jacobi, roots_legendre

from conftest import norm_rel_err
from jbalg import (
    ParameterError,
    QuadratureConfig,
    QuadratureRule,
    gauss_jacobi_entropy,
    gauss_legendre_01,
    geometric_mean,
    quad_integral_S,
    quad_integral_T,
    quad_integral_geo,
    random_positive,
    rel_entropy,
    spin_factor,
    sym_matrix,
    tsallis,
    weight_normalization,
)

LAMBDAS = (0.1, 0.5, 0.9)


# ---------------------------------------------------------------------------
# Rule construction

@pytest.mark.parametrize("n", (8, 32, 128))
def test_gauss_legendre_matches_scipy(n):
    t, w = gauss_legendre_01(n)
    u_ref, w_ref = roots_legendre(n)
    assert np.max(np.abs(t - (u_ref + 1.0) / 2.0)) <= 1e-13
    assert np.max(np.abs(w - w_ref / 2.0)) <= 1e-13
    assert math.fsum(w) == pytest.approx(1.0, abs=1e-12)
    # integrates polynomials of degree 2n-1 exactly: check x^7 at n = 8
    assert float(np.sum(w * t ** 7)) == pytest.approx(1.0 / 8.0, rel=1e-13)


@pytest.mark.parametrize("n", (8, 32, 128))
@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_gauss_jacobi_matches_scipy(n, lam):
    # the [0, 1] entropy weight maps to the standard Jacobi weight with
    # a = -lambda, b = lambda - 1 and unit jacobian factor; scipy's own
    # recurrence is noisy at negative parameters, so weights only to ~1e-9
    t, w = gauss_jacobi_entropy(n, lam)
    u_ref, w_ref = roots_jacobi(n, -lam, lam - 1.0)
    assert np.max(np.abs(t - (u_ref + 1.0) / 2.0)) <= 1e-12
    scale = np.max(np.abs(w_ref))
    assert np.max(np.abs(w - w_ref)) <= 5e-9 * scale


@pytest.mark.parametrize("lam", LAMBDAS + (0.25, 0.75))
def test_weight_sum_is_normalization_constant(lam):
    _, w = gauss_jacobi_entropy(64, lam)
    expected = weight_normalization(lam)
    assert abs(math.fsum(w) - expected) <= 1e-8 * abs(expected)


def test_weight_normalization_pinned():
    assert weight_normalization(0.5) == pytest.approx(math.pi, rel=1e-15)
    assert weight_normalization(0.1) == pytest.approx(
        math.pi / math.sin(0.1 * math.pi), rel=1e-15
    )


def test_rule_parameter_guards():
    with pytest.raises(ParameterError):
        QuadratureConfig(nodes=4)
    with pytest.raises(ParameterError):
        gauss_jacobi_entropy(16, 0.0)
    with pytest.raises(ParameterError):
        gauss_jacobi_entropy(16, 1.0)
    assert QuadratureConfig().nodes == 128
    assert QuadratureConfig().rule is QuadratureRule.GAUSS_JACOBI


# ---------------------------------------------------------------------------
# Integral representations against closed forms

def _pair(algebra, seed, cond):
    a = random_positive(algebra, cond=cond, seed=seed)
    b = random_positive(algebra, cond=cond, seed=seed + 4096)
    return a, b


@pytest.mark.parametrize("dim", (2, 3, 4, 6))
def test_integral_S_matches_closed_form(dim):
    a, b = _pair(sym_matrix(dim), seed=dim, cond=100.0)
    got = quad_integral_S(a, b)
    assert norm_rel_err(got, rel_entropy(a, b)) <= 1e-6


@pytest.mark.parametrize("dim", (2, 4, 6))
@pytest.mark.parametrize("lam", LAMBDAS)
def test_integral_T_matches_closed_form(dim, lam):
    a, b = _pair(sym_matrix(dim), seed=10 * dim, cond=100.0)
    got = quad_integral_T(a, b, lam)
    assert norm_rel_err(got, tsallis(a, b, lam)) <= 1e-6


@pytest.mark.parametrize("dim", (2, 4, 6))
@pytest.mark.parametrize("lam", LAMBDAS)
def test_integral_geo_matches_closed_form(dim, lam):
    a, b = _pair(sym_matrix(dim), seed=100 * dim, cond=100.0)
    got = quad_integral_geo(a, b, lam)
    assert norm_rel_err(got, geometric_mean(a, b, lam)) <= 1e-6


def test_integral_reps_hold_on_other_backends():
    for algebra in (spin_factor(4), sym_matrix(3)):
        a, b = _pair(algebra, seed=7, cond=50.0)
        assert norm_rel_err(quad_integral_S(a, b), rel_entropy(a, b)) <= 1e-6
        assert norm_rel_err(quad_integral_T(a, b, 0.5), tsallis(a, b, 0.5)) <= 1e-6


def test_node_halving_shows_convergence():
    # truncation error at cond ~ 300 lives below 32 nodes: each halving from
    # there costs orders of magnitude, so the node count is load bearing
    a, b = _pair(sym_matrix(4), seed=99, cond=300.0)
    want = tsallis(a, b, 0.5)
    err = {
        n: norm_rel_err(quad_integral_T(a, b, 0.5, QuadratureConfig(nodes=n)), want)
        for n in (8, 16, 32)
    }
    assert err[8] > 10.0 * err[16] > 100.0 * err[32]
    assert err[32] <= 1e-6


def test_custom_node_count_tightens_S():
    a, b = _pair(sym_matrix(3), seed=5, cond=300.0)
    want = rel_entropy(a, b)
    errs = [
        norm_rel_err(
            quad_integral_S(
                a, b, QuadratureConfig(nodes=n, rule=QuadratureRule.GAUSS_LEGENDRE)
            ),
            want,
        )
        for n in (8, 16, 32)
    ]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 1e-7
