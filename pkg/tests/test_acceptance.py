"""One test per acceptance criterion, at the stated tolerances.

Each test records a PASS/FAIL line that the terminal summary prints. Criteria
13 and 15 are strict expected failures: z^2 preserves every (1,1) angle at
1 + 0.5i, so the witness cannot exist there and the suite exit code follows.
"""
import math
import shutil
import subprocess
import sys
import time

import numpy as np
import pytest

from hypan import clifford, contour, corpus, roots, specfun, wavephys
from hypan.contour import Curve
from hypan.diffcalc import RectGrid, conformality_probe, cr_check, wave_residual
from hypan.expr import field_from_expr
from hypan.hypercore import I, HNumber, euclid_norm
from hypan.suite import brute_force_sqrt, same_set

TWO_PI_I_INV = HNumber(0.0, 1.0 / (2 * math.pi))


def test_criterion_01_euler_formula(record):
    theta = np.linspace(-3.0, 3.0, 61)
    z = HNumber(np.zeros_like(theta), theta)
    specfun.exp(z)   # first call may compile the series kernel
    t0 = time.perf_counter()
    w = specfun.exp(z)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.hypot(w.re - np.cosh(theta), w.im - np.sinh(theta))))
    assert record(1, err < 1e-12 and elapsed < 0.1, f"max error {err:.2e}, {elapsed * 1e3:.2f} ms")


def test_criterion_02_cauchy_goursat_examples(record):
    cases = [("z^2", corpus.ellipse21()), ("exp(z)", corpus.ellipse21()), ("1/z", corpus.shifted_ellipse())]
    t0 = time.perf_counter()
    norms = [euclid_norm(contour.integrate(field_from_expr(s), c).value) for s, c in cases]
    elapsed = time.perf_counter() - t0
    ok = max(norms) < 1e-8 and elapsed < 1.0
    assert record(2, ok, f"max |integral| {max(norms):.2e}, {elapsed * 1e3:.0f} ms")


def test_criterion_03_cauchy_formula_counterexample(record):
    circle = corpus.unit_circle_pv()
    i1 = euclid_norm(contour.integrate_pv(field_from_expr("z"), circle).value)
    i2 = euclid_norm(contour.integrate_pv(field_from_expr("1/z"), circle).value)
    lhs = contour.integrate_pv(field_from_expr("(z^2+1)/z"), circle).value * TWO_PI_I_INV
    f0 = HNumber(1.0, 0.0)
    ok = i1 < 1e-6 and i2 < 1e-6 and euclid_norm(lhs) < 1e-6 and lhs != f0
    assert record(3, ok, f"|I1| {i1:.2e}, |I2| {i2:.2e}, (1/2 pi i) PV {euclid_norm(lhs):.2e} vs f(0) = 1")


def test_criterion_04_hyperbola_counterexamples(record):
    c1, c2 = corpus.hyperbola_right(), corpus.hyperbola_left()
    s_exp = contour.integrate_improper(field_from_expr("exp(z)"), c1).status
    s_sq = contour.integrate_improper(field_from_expr("z^2"), c1).status
    f = field_from_expr("(z^2+1)/z")
    diff = contour.integrate_combined([(f, c1, 1), (f, c2, -1)], prefactor=TWO_PI_I_INV)
    total = contour.integrate_combined([(f, c1, 1), (f, c2, 1)], prefactor=TWO_PI_I_INV)
    ok = (s_exp == s_sq == contour.DIVERGENT and diff.status == contour.CONVERGED
          and euclid_norm(diff.value) < 1e-6 and diff.value != HNumber(1.0, 0.0)
          and total.status == contour.DIVERGENT)
    assert record(4, ok, f"exp {s_exp}, z^2 {s_sq}, difference {euclid_norm(diff.value):.2e}, "
                         f"sum {total.status}")


def test_criterion_05_root_classification(record):
    one, zero = HNumber(1.0, 0.0), HNumber(0.0, 0.0)
    fixtures = [((one, zero, HNumber(-1.0, 0.0)), 4),    # discriminant 4
                ((one, zero, zero), 1),                   # discriminant 0
                ((one, zero, one), 0)]                    # discriminant -4
    counts, worst = [], 0.0
    for coeffs, _ in fixtures:
        sols = roots.quadratic_solve(*coeffs)
        counts.append(len(sols))
        worst = max([worst] + [roots.residual(coeffs, z) for z in sols])
    ok = counts == [n for _, n in fixtures] and worst < 1e-10
    assert record(5, ok, f"counts {counts}, max residual {worst:.1e}")


def test_criterion_06_sqrt_oracle_and_bivocity(record):
    rng = np.random.default_rng(2024)
    bad = closed_fail = nonempty = 0
    for x, y in rng.uniform(-5.0, 5.0, (500, 2)):
        z = HNumber(float(x), float(y))
        rs = list(roots.sqrt_all(z))
        bad += not same_set(rs, brute_force_sqrt(z), 1e-9)
        if rs:
            nonempty += 1
            closed_fail += not same_set([I * r for r in rs], rs, 1e-9)
    ok = bad == 0 and closed_fail == 0
    assert record(6, ok, f"{bad} oracle mismatches, {closed_fail} of {nonempty} sets not closed under i")


def test_criterion_07_pauli_homomorphisms(record):
    rng = np.random.default_rng(77)
    bad = {}
    for sig in (clifford.CL10, clifford.CL01):
        pairs = rng.uniform(-10, 10, (200, 4))
        bad[str(sig)] = sum(not clifford.pauli_check(p[:2], p[2:], sig, rtol=1e-14) for p in pairs)
    assert record(7, not any(bad.values()), f"mismatches {bad}")


def test_criterion_08_g2hyp_identities(record):
    I2, E0, E1 = clifford.PSEUDOSCALAR, clifford.E0, clifford.E1
    one = clifford.Multivector.scalar(clifford.G2_HYP, 1.0)
    checks = [I2 * I2 == one, I2 * E0 == E1, I2 * E1 == E0, E0 * I2 == -E1, E1 * I2 == -E0,
              E0 * E1 == -(E1 * E0)]
    assert record(8, all(checks), f"{sum(checks)} of 6 identities exact")


def test_criterion_09_analyticity_equivalence(record):
    grid = corpus.ANALYSIS_GRID
    mismatches, worst = 0, 0.0
    for item in corpus.analyticity_corpus():
        hs = clifford.hs_analytic_nodes(item.field, grid)
        cr = np.array([r.satisfied for r in cr_check(item.field, grid)]).reshape(grid.nx, grid.ny)
        mismatches += int(np.sum(hs != cr[1:-1, 1:-1]))
        if item.analytic:
            worst = max(worst, float(np.max(clifford.hs_analytic_map(item.field, grid).norms())))
    ok = mismatches == 0 and worst < 1e-6
    assert record(9, ok, f"{mismatches} node mismatches, max |nabla F[f]| on analytic fields {worst:.1e}")


def test_criterion_10_green_flux(record):
    errs = [abs(clifford.green_flux((0.0, 0.0), r) - 2 * math.pi) for r in (0.1, 1.0)]
    pts = [(2.0, 0.5), (-1.5, 0.3), (0.2, 1.1), (0.4, -2.0)]
    hyp = max(math.hypot(*clifford.kernel_nabla("hyperbolic", p, (0.0, 0.0))) for p in pts)
    ok = max(errs) < 1e-6 and hyp < 1e-6
    assert record(10, ok, f"Euclidean flux error {max(errs):.1e}, hyperbolic |nabla K| {hyp:.1e}")


def test_criterion_11_sphere_areas(record):
    errs = [abs(clifford.sigma_n(2) - 2 * math.pi), abs(clifford.sigma_n(3) - 4 * math.pi),
            abs(clifford.sigma_n(4) - 2 * math.pi ** 2)]
    assert record(11, max(errs) < 1e-12, f"max error {max(errs):.1e}")


def test_criterion_12_wave_reconstruction(record):
    grid = RectGrid.square(-1.0, 1.0, 21)
    data = wavephys.AxisData("y", np.sin, lambda s: 0.0 * np.asarray(s))
    X, Y = grid.mesh()
    err = float(np.max(np.abs(wavephys.dalembert_grid(data, grid) - np.sin(Y) * np.cos(X))))
    w = np.vectorize(lambda x, y: wavephys.dalembert_eval(data, (x, y)))
    res = max(abs(wave_residual(w, p)) for p in [(0.3, 0.2), (-0.6, 0.8), (0.9, -0.4)])
    rated = wavephys.AxisData("y", np.sin, np.cos)
    wr = np.vectorize(lambda x, y: wavephys.dalembert_eval(rated, (x, y)))
    ys = np.linspace(-1, 1, 9)
    v_err = float(np.max(np.abs(wr(0 * ys, ys) - np.sin(ys))))
    r_err = float(np.max(np.abs(wavephys.normal_rate(wr, "y")(ys) - np.cos(ys))))
    ok = err < 1e-8 and res < 1e-4 and v_err < 1e-6 and r_err < 1e-6
    assert record(12, ok, f"grid error {err:.1e}, residual {res:.1e}, value {v_err:.1e}, rate {r_err:.1e}")


def _line(z0, d):
    return Curve(lambda t: z0[0] + d[0] * np.asarray(t), lambda t: z0[1] + d[1] * np.asarray(t),
                 -1.0, 1.0, dx=lambda t: d[0] + 0 * np.asarray(t), dy=lambda t: d[1] + 0 * np.asarray(t))


@pytest.mark.xfail(strict=True, reason="f' = 2 + i at 1 + 0.5i has positive Minkowski square, "
                                      "so z^2 preserves every (1,1) angle there")
def test_criterion_13_non_conformality_witness(record):
    f, z0 = field_from_expr("z^2"), (1.0, 0.5)
    c1, c2 = _line(z0, (1.0, 0.0)), _line(z0, (0.0, 1.0))
    euclid = conformality_probe(f, c1, c2, 0.0, 0.0, (2, 0))
    # no direction pair changes the (1,1) angle here; scan a fan to show it
    best = 0.0
    for a in np.linspace(-0.9, 0.9, 13):
        for b in np.linspace(-0.9, 0.9, 13):
            if abs(a - b) < 1e-9:
                continue
            p = conformality_probe(f, _line(z0, (1.0, a)), _line(z0, (1.0, b)), 0.0, 0.0, (1, 1))
            best = max(best, p.change)
    ok = euclid.change > 0.01 and best > 0.01
    record(13, ok, f"(2,0) change {euclid.change:.3f}, largest (1,1) change over 156 pairs {best:.1e}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the suite includes criterion 13, which fails at 1 + 0.5i")
def test_criterion_15_paper_suite_cli(record):
    exe = shutil.which("hyp")
    cmd = [exe] if exe else [sys.executable, "-m", "hypan.cli"]
    t0 = time.perf_counter()
    proc = subprocess.run(cmd + ["paper-suite", "--text"], capture_output=True, text=True, timeout=120)
    elapsed = time.perf_counter() - t0
    summary = [ln for ln in proc.stdout.splitlines() if "checks passed" in ln]
    ok = proc.returncode == 0 and elapsed < 30.0
    record(15, ok, f"exit {proc.returncode} in {elapsed:.1f} s; {summary[0] if summary else 'no summary'}")
    assert ok


def test_criterion_14_ml_bound(record):
    ratios = [euclid_norm(contour.integrate(f, c).value) / contour.ml_bound(f, c).bound
              for _, f, c in corpus.goursat_corpus()]
    one = field_from_expr("1")
    seg = Curve.segment(HNumber(0.0, 0.0), HNumber(3.0, 4.0))
    gap = abs(contour.ml_bound(one, seg).bound - euclid_norm(contour.integrate(one, seg).value))
    ok = max(ratios) <= 1.0 and gap < 1e-10
    assert record(14, ok, f"max |integral|/(M L) {max(ratios):.2e} over {len(ratios)} cases, "
                          f"segment gap {gap:.1e}")
