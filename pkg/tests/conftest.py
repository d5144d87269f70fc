"""Shared helpers: random elements, backend embeddings, error measures."""

from __future__ import annotations

import numpy as np
import pytest

from jbalg import (
    JordanElement,
    albert,
    jb_norm,
    spin_factor,
    sym_matrix,
)
from jbalg.symmetric import dense_from_element, pack

# One representative descriptor per backend plus size variety for sym/spin.
SYM_ALGEBRAS = tuple(sym_matrix(n) for n in (2, 3, 4, 6, 8))
SPIN_ALGEBRAS = tuple(spin_factor(n) for n in (1, 2, 4, 8))
ALL_ALGEBRAS = SYM_ALGEBRAS + SPIN_ALGEBRAS + (albert(),)

BACKEND_SAMPLES = {
    "sym": SYM_ALGEBRAS,
    "spin": SPIN_ALGEBRAS,
    "albert": (albert(),),
}


def random_element(algebra, rng) -> JordanElement:
    """Generic (not necessarily positive) element with O(1) coordinates."""
    return JordanElement(algebra, rng.standard_normal(algebra.coord_count))


def rel_err(x: JordanElement, y: JordanElement) -> float:
    """Coordinate deviation relative to the larger operand (floor 1)."""
    num = float(np.max(np.abs(x.coords - y.coords)))
    den = max(
        1.0,
        float(np.max(np.abs(x.coords))),
        float(np.max(np.abs(y.coords))),
    )
    return num / den


def norm_rel_err(x: JordanElement, y: JordanElement) -> float:
    """Spectral-norm deviation relative to the larger operand (floor 1)."""
    return jb_norm(x - y) / max(1.0, jb_norm(x), jb_norm(y))


def sym_from_dense(m: np.ndarray) -> JordanElement:
    n = m.shape[0]
    return JordanElement(sym_matrix(n), pack(np.asarray(m, dtype=np.float64)))


def dense(x: JordanElement) -> np.ndarray:
    return dense_from_element(x)


def spin2_to_sym2(x: JordanElement) -> JordanElement:
    """Spin factor R (+) R^2 is isomorphic to 2x2 symmetric matrices:
    (s, v1, v2) -> [[s + v1, v2], [v2, s - v1]]."""
    s, v1, v2 = (float(c) for c in x.coords)
    return sym_from_dense(np.array([[s + v1, v2], [v2, s - v1]]))


def sym3_to_albert(x: JordanElement) -> JordanElement:
    """Real symmetric 3x3 matrices embed in the Albert algebra as the
    real-part-only (e0) slice: x1 <-> (1,2), x2 <-> (2,0), x3 <-> (0,1)."""
    m = dense_from_element(x)
    coords = np.zeros(27)
    coords[0], coords[1], coords[2] = m[0, 0], m[1, 1], m[2, 2]
    coords[3] = m[1, 2]
    coords[11] = m[2, 0]
    coords[19] = m[0, 1]
    return JordanElement(albert(), coords)


def albert_real_to_sym3(x: JordanElement) -> JordanElement:
    """Inverse of sym3_to_albert; requires vanishing imaginary parts."""
    cf = x.coords
    for block in (cf[4:11], cf[12:19], cf[20:27]):
        assert float(np.max(np.abs(block))) == 0.0
    m = np.array(
        [
            [cf[0], cf[19], cf[11]],
            [cf[19], cf[1], cf[3]],
            [cf[11], cf[3], cf[2]],
        ]
    )
    return sym_from_dense(m)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
