"""Acceptance gate: one criterion per test, one visible pass/fail line each.

Every criterion runs at its stated tolerance and trial count; the printed
line reports the measured worst case and elapsed time so a failing margin is
visible without re-running.
"""

import math
import time

import numpy as np
import pytest

from conftest import BACKEND_SAMPLES, random_element
from jbalg import (
    affine,
    albert,
    gauss_jacobi_entropy,
    geometric_mean,
    get_entry,
    identity,
    jb_norm,
    jordan_product,
    negative_control_ids,
    quad_integral_S,
    quad_integral_T,
    quad_integral_geo,
    quad_map,
    random_positive,
    rel_entropy,
    run_entry,
    spin_factor,
    sym_matrix,
    tsallis,
    weight_normalization,
)
from jbalg.albert import char_cubic

AXIOM_TOL = 1e-10
CAYLEY_HAMILTON_TOL = 1e-9
INTEGRAL_RELTOL = 1e-6
WEIGHT_RELTOL = 1e-8
IDENTITY_TOL = 1e-8
CHAIN_TOL = 1e-8

IDENTITY_SUITE = (
    "homogeneity-S",
    "homogeneity-T",
    "congruence-S",
    "congruence-T",
    "congruence-harm",
    "s01-reduction",
    "tl1-reduction",
)

INEQUALITY_REGISTRY = (
    "prop4.3i", "prop4.3ii", "prop4.3iii",
    "prop4.5a", "prop4.5b", "prop4.5c", "prop4.5d",
    "thm4.6i", "thm4.6ii",
    "cor4.7i", "cor4.7ii",
    "cor4.8i", "cor4.8ii",
    "thm4.9i", "thm4.9ii", "thm4.9iii", "thm4.9iv",
    "cor-delta-i", "cor-delta-ii",
    "tsallis-order", "tsallis-bounds",
    "remark-beta1",
    "iv-prop-i", "iv-prop-ii",
)

CONCAVITY_SUITE = (
    "concave-S-slot1",
    "concave-S-slot2",
    "concave-T-slot1",
    "concave-T-slot2",
    "joint-concave-S",
    "joint-concave-T",
    "xlogx-concave",
)


def _emit(capsys, num, name, ok, detail):
    with capsys.disabled():
        print(
            f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} - {detail}",
            flush=True,
        )


def _run(entry_id, backend, **kw):
    kw.setdefault("threads", 0)
    return run_entry(entry_id, None if backend == "scalar" else backend, **kw)


def _entry_runs(entry_id, trials):
    entry = get_entry(entry_id)
    trials = max(trials, entry.default_trials)
    return [
        _run(entry_id, backend, trials=trials) for backend in entry.backends
    ]


# ---------------------------------------------------------------------------
# 1. algebra axioms

def test_criterion_1_axioms(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    worst_ch = 0.0
    trials_per_backend = 1000
    for backend, algebras in BACKEND_SAMPLES.items():
        rng = np.random.default_rng(90210)
        for trial in range(trials_per_backend):
            algebra = algebras[trial % len(algebras)]
            x = random_element(algebra, rng)
            y = random_element(algebra, rng)
            nx = max(1.0, jb_norm(x))
            ny = max(1.0, jb_norm(y))

            xy = jordan_product(x, y)
            worst = max(worst, jb_norm(xy - jordan_product(y, x)) / (nx * ny))

            x2 = jordan_product(x, x)
            jid = jordan_product(x, jordan_product(y, x2)) - jordan_product(
                jordan_product(x, y), x2
            )
            worst = max(worst, jb_norm(jid) / (nx ** 3 * ny))

            z = random_element(algebra, rng)
            nz = max(1.0, jb_norm(z))
            lin = quad_map(x, affine(y, z, 0.7, -1.3)) - affine(
                quad_map(x, y), quad_map(x, z), 0.7, -1.3
            )
            worst = max(worst, jb_norm(lin) / (nx ** 2 * max(ny, nz)))

            scale2 = (max(nx, ny)) ** 2
            worst = max(
                worst,
                (jb_norm(xy) - jb_norm(x) * jb_norm(y)) / scale2,
                abs(jb_norm(x2) - jb_norm(x) ** 2) / scale2,
                (jb_norm(x2) - jb_norm(x2 + jordan_product(y, y))) / scale2,
            )

            if backend == "albert":
                t, s, n = char_cubic(x)
                res = (
                    jordan_product(x2, x)
                    - t * x2
                    + s * x
                    - n * identity(algebra)
                )
                worst_ch = max(worst_ch, jb_norm(res) / nx ** 3)

    elapsed = time.perf_counter() - t0
    ok = worst <= AXIOM_TOL and worst_ch <= CAYLEY_HAMILTON_TOL and elapsed <= 60.0
    _emit(
        capsys, 1, "algebra axioms", ok,
        f"worst residual {worst:.3e} (tol {AXIOM_TOL:g}), worst "
        f"char-cubic residual {worst_ch:.3e} (tol {CAYLEY_HAMILTON_TOL:g}), "
        f"{trials_per_backend} trials/backend in {elapsed:.1f}s (budget 60s)",
    )
    assert worst <= AXIOM_TOL
    assert worst_ch <= CAYLEY_HAMILTON_TOL
    assert elapsed <= 60.0


# ---------------------------------------------------------------------------
# 2. integral representations

def test_criterion_2_integral_representations(capsys):
    t0 = time.perf_counter()
    lambdas = (0.1, 0.5, 0.9)
    worst = 0.0

    def rel(got, want):
        return jb_norm(got - want) / max(1e-12, jb_norm(want))

    seed = 1000
    for dim in (2, 3, 4, 5, 6):
        algebra = sym_matrix(dim)
        for rep in range(2):
            a = random_positive(algebra, cond=100.0, seed=seed)
            b = random_positive(algebra, cond=100.0, seed=seed + 1)
            seed += 2
            worst = max(worst, rel(quad_integral_S(a, b), rel_entropy(a, b)))
            for lam in lambdas:
                worst = max(
                    worst,
                    rel(quad_integral_T(a, b, lam), tsallis(a, b, lam)),
                    rel(quad_integral_geo(a, b, lam), geometric_mean(a, b, lam)),
                )

    worst_weight = 0.0
    for lam in (0.1, 0.25, 0.5, 0.75, 0.9):
        _, w = gauss_jacobi_entropy(128, lam)
        expected = weight_normalization(lam)
        worst_weight = max(worst_weight, abs(math.fsum(w) - expected) / expected)

    elapsed = time.perf_counter() - t0
    ok = worst <= INTEGRAL_RELTOL and worst_weight <= WEIGHT_RELTOL and elapsed <= 120.0
    _emit(
        capsys, 2, "integral representations", ok,
        f"worst relative error {worst:.3e} (tol {INTEGRAL_RELTOL:g}) at 128 "
        f"nodes, worst weight-sum error {worst_weight:.3e} "
        f"(tol {WEIGHT_RELTOL:g}), in {elapsed:.1f}s (budget 120s)",
    )
    assert worst <= INTEGRAL_RELTOL
    assert worst_weight <= WEIGHT_RELTOL
    assert elapsed <= 120.0


# ---------------------------------------------------------------------------
# 3. identity suite

def test_criterion_3_identity_suite(capsys):
    t0 = time.perf_counter()
    worst = math.inf
    runs = 0
    all_passed = True
    for entry_id in IDENTITY_SUITE:
        for rep in _entry_runs(entry_id, trials=500):
            runs += 1
            all_passed &= rep.passed and rep.tol <= IDENTITY_TOL
            margins = [
                l["worst_margin"] for l in rep.links if l["worst_margin"] is not None
            ]
            if margins:
                worst = min(worst, min(margins))
    elapsed = time.perf_counter() - t0
    ok = all_passed and worst >= -IDENTITY_TOL
    _emit(
        capsys, 3, "identity suite", ok,
        f"{len(IDENTITY_SUITE)} identities x all backends ({runs} runs, 500 "
        f"trials each), worst deviation margin {worst:.3e} "
        f"(tol {IDENTITY_TOL:g}), in {elapsed:.1f}s",
    )
    assert all_passed
    assert worst >= -IDENTITY_TOL


# ---------------------------------------------------------------------------
# 4. lambda -> 0 limit

def test_criterion_4_tsallis_limit(capsys):
    t0 = time.perf_counter()
    lambdas = (1e-2, 1e-3, 1e-4)
    lo, hi = math.inf, 0.0
    for algebra in (sym_matrix(4), spin_factor(4), albert()):
        for seed in (1, 2, 3):
            a = random_positive(algebra, cond=30.0, seed=seed)
            b = random_positive(algebra, cond=30.0, seed=seed + 500)
            s = rel_entropy(a, b)
            dev = [jb_norm(tsallis(a, b, lam) - s) for lam in lambdas]
            assert all(d > 0 for d in dev)
            for d0, d1 in zip(dev, dev[1:]):
                ratio = d0 / d1
                lo, hi = min(lo, ratio), max(hi, ratio)
    elapsed = time.perf_counter() - t0
    ok = 5.0 <= lo and hi <= 20.0
    _emit(
        capsys, 4, "deformation limit", ok,
        f"successive deviation ratios in [{lo:.2f}, {hi:.2f}] "
        f"(required [5, 20]) across backends, in {elapsed:.1f}s",
    )
    assert lo >= 5.0
    assert hi <= 20.0


# ---------------------------------------------------------------------------
# 5. inequality registry

def test_criterion_5_inequality_registry(capsys):
    t0 = time.perf_counter()
    runs = 0
    failures = []
    worst = math.inf
    for entry_id in INEQUALITY_REGISTRY:
        for rep in _entry_runs(entry_id, trials=500):
            runs += 1
            if not rep.passed or rep.violations or rep.tol > CHAIN_TOL:
                failures.append(f"{entry_id}[{rep.backend['algebra']}]")
            margins = [
                l["worst_margin"] for l in rep.links if l["worst_margin"] is not None
            ]
            if margins:
                worst = min(worst, min(margins))

    controls_missing = []
    for entry_id in negative_control_ids():
        entry = get_entry(entry_id)
        rep = _run(entry_id, entry.backends[0], trials=60, negate=True)
        if len(rep.violations) < 1:
            controls_missing.append(entry_id)

    elapsed = time.perf_counter() - t0
    ok = not failures and not controls_missing and elapsed <= 900.0
    _emit(
        capsys, 5, "inequality registry", ok,
        f"{len(INEQUALITY_REGISTRY)} claims / {runs} (theorem, backend) runs "
        f"at >=500 trials, zero violations, worst margin {worst:.3e} "
        f"(tol {CHAIN_TOL:g}); {len(negative_control_ids())} negative "
        f"controls all violated; serial in {elapsed:.1f}s (budget 900s)"
        + (f"; FAILURES: {failures + controls_missing}" if not ok else ""),
    )
    assert not failures, failures
    assert not controls_missing, controls_missing
    assert elapsed <= 900.0


# ---------------------------------------------------------------------------
# 6. concavity suite

def test_criterion_6_concavity(capsys):
    t0 = time.perf_counter()
    worst = math.inf
    runs = 0
    all_passed = True
    for entry_id in CONCAVITY_SUITE:
        for rep in _entry_runs(entry_id, trials=500):
            runs += 1
            all_passed &= rep.passed and rep.tol <= CHAIN_TOL
            margins = [
                l["worst_margin"] for l in rep.links if l["worst_margin"] is not None
            ]
            if margins:
                worst = min(worst, min(margins))
    elapsed = time.perf_counter() - t0
    ok = all_passed and worst >= -CHAIN_TOL
    _emit(
        capsys, 6, "concavity suite", ok,
        f"{len(CONCAVITY_SUITE)} claims / {runs} runs at 500 trials, worst "
        f"Loewner margin {worst:.3e} (floor -{CHAIN_TOL:g}), in {elapsed:.1f}s",
    )
    assert all_passed
    assert worst >= -CHAIN_TOL


# ---------------------------------------------------------------------------
# 7. determinism

def test_criterion_7_determinism(capsys):
    t0 = time.perf_counter()
    cases = (
        ("thm4.6i", "sym", dict(dims=(2, 3), trials=40, seed=9)),
        ("cor-delta-i", "spin", dict(trials=40, seed=9)),
        ("tsallis-bounds", "albert", dict(trials=20, seed=9)),
        ("weight-norm", "scalar", dict(trials=16, seed=9)),
    )
    mismatches = []
    for entry_id, backend, kw in cases:
        serial_a = _run(entry_id, backend, threads=0, **kw).to_json()
        serial_b = _run(entry_id, backend, threads=0, **kw).to_json()
        parallel = _run(entry_id, backend, threads=4, **kw).to_json()
        if serial_a != serial_b:
            mismatches.append(f"{entry_id}: serial reruns differ")
        if serial_a != parallel:
            mismatches.append(f"{entry_id}: serial vs parallel differ")
    elapsed = time.perf_counter() - t0
    ok = not mismatches
    _emit(
        capsys, 7, "determinism", ok,
        f"{len(cases)} configurations byte-identical across reruns and "
        f"serial-vs-4-thread runs, in {elapsed:.1f}s"
        + (f"; MISMATCHES: {mismatches}" if mismatches else ""),
    )
    assert not mismatches, mismatches
