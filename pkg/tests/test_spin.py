"""Spin factor backend: closed-form spectrum and the 2x2 matrix model."""

import numpy as np
import pytest

from conftest import random_element, rel_err, spin2_to_sym2
from jbalg import (
    func_calculus,
    identity,
    jb_norm,
    jordan_product,
    quad_map,
    spectrum,
    spin_factor,
)
from jbalg.elements import JordanElement, SF_EXP, SF_IDENTITY, sf_power
from jbalg.spin import spin_apply, spin_spectrum_pair

DIMS = (1, 2, 3, 4, 8)


@pytest.mark.parametrize("n", DIMS)
def test_spectrum_closed_form(rng, n):
    A = spin_factor(n)
    for _ in range(20):
        x = random_element(A, rng)
        s = float(x.coords[0])
        r = float(np.linalg.norm(x.coords[1:]))
        lo, hi = spin_spectrum_pair(x)
        assert lo == pytest.approx(s - r, abs=1e-15 * (1 + abs(s) + r))
        assert hi == pytest.approx(s + r, abs=1e-15 * (1 + abs(s) + r))
        assert jb_norm(x) == pytest.approx(max(abs(lo), abs(hi)), rel=1e-15)


def test_spectrum_multiplicity_at_zero_vector():
    x = JordanElement(spin_factor(3), [2.5, 0.0, 0.0, 0.0])
    sp = spectrum(x)
    assert sp.values == (2.5,)
    assert sp.multiplicities == (2,)


def test_product_matches_2x2_matrix_model(rng):
    # R (+) R^2 is isomorphic to 2x2 symmetric matrices
    A = spin_factor(2)
    for _ in range(40):
        x = random_element(A, rng)
        y = random_element(A, rng)
        lhs = spin2_to_sym2(jordan_product(x, y))
        rhs = jordan_product(spin2_to_sym2(x), spin2_to_sym2(y))
        assert rel_err(lhs, rhs) <= 1e-13


def test_quad_map_matches_2x2_matrix_model(rng):
    A = spin_factor(2)
    for _ in range(40):
        a = random_element(A, rng)
        b = random_element(A, rng)
        lhs = spin2_to_sym2(quad_map(a, b))
        rhs = quad_map(spin2_to_sym2(a), spin2_to_sym2(b))
        assert rel_err(lhs, rhs) <= 1e-12


def test_apply_matches_2x2_matrix_model(rng):
    A = spin_factor(2)
    for _ in range(40):
        x = random_element(A, rng)
        lhs = spin2_to_sym2(func_calculus(x, SF_EXP))
        rhs = func_calculus(spin2_to_sym2(x), SF_EXP)
        assert rel_err(lhs, rhs) <= 1e-12


@pytest.mark.parametrize("n", DIMS)
def test_apply_eigen_reconstruction(rng, n):
    # f(x) must carry f(spectrum): check both spectral slots directly
    A = spin_factor(n)
    for _ in range(20):
        x = random_element(A, rng)
        lo, hi = spin_spectrum_pair(x)
        fx = spin_apply(x, SF_EXP)
        flo, fhi = spin_spectrum_pair(fx)
        scale = max(1.0, np.exp(hi))
        assert abs(flo - min(np.exp(lo), np.exp(hi))) <= 1e-13 * scale
        assert abs(fhi - max(np.exp(lo), np.exp(hi))) <= 1e-13 * scale


def test_apply_identity_and_square(rng):
    A = spin_factor(4)
    x = random_element(A, rng)
    assert rel_err(spin_apply(x, SF_IDENTITY), x) <= 1e-15
    assert rel_err(spin_apply(x, sf_power(2)), jordan_product(x, x)) <= 1e-14


def test_apply_tiny_vector_part_keeps_direction():
    # dd noise must not contaminate the v-part when |v| is tiny but nonzero
    x = JordanElement(spin_factor(2), [1.0, 3e-13, 4e-13])
    fx = spin_apply(x, SF_EXP)
    v = np.asarray(fx.coords[1:])
    # f(s +- r) ~ e * (1 +- r): v-part of f(x) is e * v to first order
    want = np.e * np.array([3e-13, 4e-13])
    assert np.max(np.abs(v - want)) <= 1e-15
    assert fx.coords[0] == pytest.approx(np.e, rel=1e-14)


def test_identity_element_fixed_point():
    A = spin_factor(5)
    e = identity(A)
    assert spectrum(e).values == (1.0,)
    assert rel_err(jordan_product(e, e), e) == 0.0
