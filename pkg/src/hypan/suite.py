"""End-to-end reproduction checks, one or more per acceptance criterion.

Checks run in a fixed declaration order. With ``threads > 1`` they are
evaluated concurrently, but results are still reported in that order and
every check seeds its own generator, so the report does not depend on the
thread count.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import clifford, contour, corpus, roots, specfun, wavephys
from .diffcalc import RectGrid, conformality_probe, cr_check, wave_residual
from .contour import Curve
from .errors import HypError
from .expr import field_from_expr
from .hypercore import HNumber, I, euclid_norm


@dataclass(frozen=True)
class CheckResult:
    name: str
    criterion: int
    passed: bool
    detail: str
    seconds: float = 0.0
    note: str = ""        # run-dependent text such as timings; kept out of JSON

    def to_json(self):
        return {"name": self.name, "criterion": self.criterion, "passed": self.passed,
                "detail": self.detail}


_CHECKS = []


def check(criterion, name):
    def deco(fn):
        _CHECKS.append((criterion, name, fn))
        return fn
    return deco


def check_names():
    return [name for _, name, _ in _CHECKS]


def _fmt(x):
    return f"{x:.3g}"


# ---------------------------------------------------------------------------
# 1. exponential of i*theta
# ---------------------------------------------------------------------------

@check(1, "euler-formula-grid")
def _euler():
    theta = np.linspace(-3.0, 3.0, 61)
    z = HNumber(np.zeros_like(theta), theta)
    specfun.exp(z)  # warm-up: exclude one-off JIT compilation from the timing
    t0 = time.perf_counter()
    lhs = specfun.exp(z)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.hypot(lhs.re - np.cosh(theta), lhs.im - np.sinh(theta))))
    return err < 1e-12 and elapsed < 0.1, f"max error {_fmt(err)}", f"{elapsed * 1e3:.2f} ms"


# ---------------------------------------------------------------------------
# 2. closed integrals of analytic fields
# ---------------------------------------------------------------------------

_GOURSAT = (
    ("goursat-z2-ellipse", "z^2", corpus.ellipse21),
    ("goursat-exp-ellipse", "exp(z)", corpus.ellipse21),
    ("goursat-inverse-shifted-ellipse", "1/z", corpus.shifted_ellipse),
)


def _goursat_case(src, curve):
    r = contour.integrate(field_from_expr(src), curve())
    n = euclid_norm(r.value)
    return r.status == contour.CONVERGED and n < 1e-8, f"|integral| = {_fmt(n)}"


for _name, _src, _curve in _GOURSAT:
    check(2, _name)(lambda src=_src, curve=_curve: _goursat_case(src, curve))


@check(2, "goursat-runtime")
def _goursat_runtime():
    t0 = time.perf_counter()
    for _, src, curve in _GOURSAT:
        contour.integrate(field_from_expr(src), curve())
    elapsed = time.perf_counter() - t0
    return elapsed < 1.0, "three integrals within 1 s", f"{elapsed * 1e3:.1f} ms"


# ---------------------------------------------------------------------------
# 3. the Cauchy formula does not carry over
# ---------------------------------------------------------------------------

def _pv(src):
    return contour.integrate_pv(field_from_expr(src), corpus.unit_circle_pv()).value


@check(3, "pv-integral-z")
def _pv_i1():
    n = euclid_norm(_pv("z"))
    return n < 1e-6, f"|I1| = {_fmt(n)}"


@check(3, "pv-integral-inverse")
def _pv_i2():
    n = euclid_norm(_pv("1/z"))
    return n < 1e-6, f"|I2| = {_fmt(n)}"


@check(3, "cauchy-formula-fails")
def _cauchy_formula():
    total = _pv("(z^2+1)/z")
    lhs = total * HNumber(0.0, 1.0 / (2 * math.pi))   # 1/(2 pi i) = i/(2 pi)
    f0 = HNumber(1.0, 0.0)
    gap = euclid_norm(lhs - f0)
    return euclid_norm(lhs) < 1e-6 and gap > 0.5, f"(1/2 pi i) PV = {_fmt(euclid_norm(lhs))}, f(0) = 1"


# ---------------------------------------------------------------------------
# 4. hyperbola-branch counterexamples
# ---------------------------------------------------------------------------

def _divergent(result):
    last = result.partials[-1][0] if result.partials else None
    return result.status == contour.DIVERGENT, f"{result.status} at T = {last}"


@check(4, "exp-on-hyperbola-divergent")
def _exp_c1():
    return _divergent(contour.integrate_improper(field_from_expr("exp(z)"), corpus.hyperbola_right()))


@check(4, "square-on-hyperbola-divergent")
def _sq_c1():
    return _divergent(contour.integrate_improper(field_from_expr("z^2"), corpus.hyperbola_right()))


_TWO_PI_I_INV = HNumber(0.0, 1.0 / (2 * math.pi))


def _combined(sign):
    f = field_from_expr("(z^2+1)/z")
    terms = [(f, corpus.hyperbola_right(), 1.0), (f, corpus.hyperbola_left(), sign)]
    return contour.integrate_combined(terms, prefactor=_TWO_PI_I_INV)


@check(4, "branch-difference-vanishes")
def _comb_minus():
    r = _combined(-1.0)
    if r.status != contour.CONVERGED:
        return False, r.status
    n = euclid_norm(r.value)
    gap = euclid_norm(r.value - HNumber(1.0, 0.0))
    return n < 1e-6 and gap > 0.5, f"value {_fmt(n)}, distance to c = 1 is {_fmt(gap)}"


@check(4, "branch-sum-divergent")
def _comb_plus():
    return _divergent(_combined(1.0))


# ---------------------------------------------------------------------------
# 5. quadratic equations
# ---------------------------------------------------------------------------

_QUADRATICS = (("quadratic-four-roots", (1.0, 0.0, -1.0), 4),
               ("quadratic-one-root", (1.0, 0.0, 0.0), 1),
               ("quadratic-no-roots", (1.0, 0.0, 1.0), 0))


def _quadratic_case(coeffs, expected):
    cs = tuple(HNumber(c, 0.0) for c in coeffs)
    sols = roots.quadratic_solve(*cs)
    res = max((roots.residual(cs, z) for z in sols), default=0.0)
    delta = coeffs[1] ** 2 - 4 * coeffs[0] * coeffs[2]
    return len(sols) == expected and res < 1e-10, \
        f"discriminant {delta:g}: {len(sols)} roots, max residual {_fmt(res)}"


for _name, _coeffs, _n in _QUADRATICS:
    check(5, _name)(lambda coeffs=_coeffs, n=_n: _quadratic_case(coeffs, n))


# ---------------------------------------------------------------------------
# 6. square roots against a brute-force solver
# ---------------------------------------------------------------------------

def brute_force_sqrt(z, tol=1e-12):
    """Solve ``a^2 + b^2 = x, 2ab = y`` directly, without idempotent coordinates.

    For ``a != 0``: ``b = y / 2a`` and ``4a^4 - 4x a^2 + y^2 = 0``; the
    ``a = 0`` case needs ``y = 0`` and ``b^2 = x``.
    """
    x, y = float(z.re), float(z.im)
    out = []
    scale = 1.0 + abs(x) + abs(y)
    for A in np.roots([4.0, -4.0 * x, y * y]):
        if abs(A.imag) > 1e-9 * scale or A.real <= tol * scale:
            continue
        a = math.sqrt(A.real)
        for s in (a, -a):
            out.append(HNumber(s, y / (2 * s)))
    if abs(y) <= tol * scale and x >= -tol * scale:
        b = math.sqrt(max(x, 0.0))
        out.extend([HNumber(0.0, b), HNumber(0.0, -b)])
    return out


def same_set(xs, ys, tol):
    def covered(a, bs):
        return all(any(euclid_norm(p - q) <= tol for q in bs) for p in a)
    return covered(xs, ys) and covered(ys, xs)


@check(6, "sqrt-matches-brute-force")
def _sqrt_oracle():
    rng = np.random.default_rng(6)
    bad = 0
    for x, y in rng.uniform(-5.0, 5.0, (500, 2)):
        z = HNumber(float(x), float(y))
        if not same_set(list(roots.sqrt_all(z)), brute_force_sqrt(z), 1e-9):
            bad += 1
    return bad == 0, f"{bad} of 500 inputs disagree"


@check(6, "sqrt-closed-under-i")
def _bivocity():
    rng = np.random.default_rng(66)
    checked = 0
    for x, y in rng.uniform(-5.0, 5.0, (500, 2)):
        rs = list(roots.sqrt_all(HNumber(float(x), float(y))))
        if rs:
            checked += 1
            if not same_set([I * r for r in rs], rs, 1e-12):
                return False, f"multiplying by i leaves the root set at {x}, {y}"
    return checked > 0, f"{checked} nonempty root sets closed under multiplication by i"


# ---------------------------------------------------------------------------
# 7. two-dimensional Clifford algebras as matrix algebras
# ---------------------------------------------------------------------------

def _pauli(sig, seed):
    rng = np.random.default_rng(seed)
    pairs = rng.uniform(-10.0, 10.0, (200, 4))
    bad = sum(not clifford.pauli_check(p[:2], p[2:], sig, rtol=1e-14) for p in pairs)
    return bad == 0, f"{200 - bad} of 200 products match"


check(7, "cl10-pauli-homomorphism")(lambda: _pauli(clifford.CL10, 7))
check(7, "cl01-pauli-homomorphism")(lambda: _pauli(clifford.CL01, 77))


# ---------------------------------------------------------------------------
# 8. sign flips in the Minkowski plane algebra
# ---------------------------------------------------------------------------

def _identity(lhs, rhs):
    ok = lhs == rhs
    return ok, f"{clifford.format_multivector(lhs)} vs {clifford.format_multivector(rhs)}"


_I = clifford.PSEUDOSCALAR
_E0, _E1 = clifford.E0, clifford.E1
_ONE = clifford.Multivector.scalar(clifford.G2_HYP, 1.0)

check(8, "pseudoscalar-squares-to-one")(lambda: _identity(_I * _I, _ONE))
check(8, "pseudoscalar-times-e0")(lambda: _identity(_I * _E0, _E1))
check(8, "pseudoscalar-times-e1")(lambda: _identity(_I * _E1, _E0))
check(8, "e0-times-pseudoscalar")(lambda: _identity(_E0 * _I, -_E1))
check(8, "e1-times-pseudoscalar")(lambda: _identity(_E1 * _I, -_E0))
check(8, "generators-anticommute")(lambda: _identity(_E0 * _E1, -(_E1 * _E0)))


# ---------------------------------------------------------------------------
# 9. hyperbolic analyticity two ways
# ---------------------------------------------------------------------------

@check(9, "gradient-and-cr-agree")
def _hs_vs_cr():
    grid = corpus.ANALYSIS_GRID
    mismatches = 0
    for item in corpus.analyticity_corpus():
        hs = clifford.hs_analytic_nodes(item.field, grid)
        cr = np.array([r.satisfied for r in cr_check(item.field, grid)]).reshape(grid.nx, grid.ny)
        mismatches += int(np.sum(hs != cr[1:-1, 1:-1]))
    return mismatches == 0, f"{mismatches} disagreeing interior nodes over 6 fields"


@check(9, "analytic-fields-have-zero-gradient")
def _hs_zero():
    grid = corpus.ANALYSIS_GRID
    worst = max(float(np.max(clifford.hs_analytic_map(it.field, grid).norms()))
                for it in corpus.analyticity_corpus() if it.analytic)
    return worst < 1e-6, f"max |nabla F[f]| = {_fmt(worst)}"


# ---------------------------------------------------------------------------
# 10. Green-kernel fluxes
# ---------------------------------------------------------------------------

@check(10, "euclidean-kernel-flux")
def _green():
    errs = [abs(clifford.green_flux((0.3, -0.2), r) - 2 * math.pi) for r in (0.1, 1.0)]
    return max(errs) < 1e-6, f"|flux - 2 pi| = {_fmt(errs[0])}, {_fmt(errs[1])} at radii 0.1, 1"


@check(10, "hyperbolic-kernel-divergence-free")
def _hyp_kernel():
    pts = [(2.0, 0.5), (-1.5, 0.3), (0.2, 1.1), (0.4, -2.0), (3.0, -1.0)]
    worst = max(math.hypot(*clifford.kernel_nabla("hyperbolic", p, (0.0, 0.0))) for p in pts)
    return worst < 1e-6, f"max |nabla K| = {_fmt(worst)} at {len(pts)} off-diagonal points"


# ---------------------------------------------------------------------------
# 11. unit-sphere areas
# ---------------------------------------------------------------------------

for _n, _exact, _label in ((2, 2 * math.pi, "2 pi"), (3, 4 * math.pi, "4 pi"),
                           (4, 2 * math.pi ** 2, "2 pi^2")):
    check(11, f"sphere-area-{_n}")(
        lambda n=_n, exact=_exact, label=_label: (
            abs(clifford.sigma_n(n) - exact) < 1e-12,
            f"sigma_{n} - {label} = {_fmt(clifford.sigma_n(n) - exact)}"))


# ---------------------------------------------------------------------------
# 12. d'Alembert reconstruction
# ---------------------------------------------------------------------------

_WAVE_GRID = RectGrid.square(-1.5, 1.5, 21)


@check(12, "wave-reconstruction")
def _wave():
    data = wavephys.AxisData("y", np.sin, lambda s: 0.0 * np.asarray(s))
    X, Y = _WAVE_GRID.mesh()
    err = float(np.max(np.abs(wavephys.dalembert_grid(data, _WAVE_GRID) - np.sin(Y) * np.cos(X))))
    w = np.vectorize(lambda x, y: wavephys.dalembert_eval(data, (x, y)))
    res = max(abs(wave_residual(w, p)) for p in [(0.3, 0.2), (-0.7, 1.1), (1.2, -0.4)])
    return err < 1e-8 and res < 1e-4, f"max error {_fmt(err)}, max wave residual {_fmt(res)}"


@check(12, "wave-initial-data")
def _wave_initial():
    data = wavephys.AxisData("y", np.sin, np.cos)
    ys = np.linspace(-1.5, 1.5, 13)
    w = np.vectorize(lambda x, y: wavephys.dalembert_eval(data, (x, y)))
    value_err = float(np.max(np.abs(w(0.0 * ys, ys) - np.sin(ys))))
    rate = wavephys.normal_rate(w, "y")
    rate_err = float(np.max(np.abs(rate(ys) - np.cos(ys))))
    return value_err < 1e-6 and rate_err < 1e-6, \
        f"value error {_fmt(value_err)}, rate error {_fmt(rate_err)}"


# ---------------------------------------------------------------------------
# 13. analytic maps need not preserve (n,m)-angles
# ---------------------------------------------------------------------------

def _line(z0, direction):
    (x0, y0), (a, b) = z0, direction
    return Curve(lambda t: x0 + a * np.asarray(t), lambda t: y0 + b * np.asarray(t), -1.0, 1.0,
                 dx=lambda t: a + 0.0 * np.asarray(t), dy=lambda t: b + 0.0 * np.asarray(t))


def _conformality(signature, z0=(1.0, 0.5), d1=(1.0, 0.0), d2=(0.0, 1.0)):
    f = field_from_expr("z^2")
    probe = conformality_probe(f, _line(z0, d1), _line(z0, d2), 0.0, 0.0, signature)
    return probe.change > 0.01, f"angle {_fmt(probe.before)} -> {_fmt(probe.after)}"


check(13, "square-changes-euclidean-angle")(lambda: _conformality((2, 0)))
check(13, "square-changes-minkowski-angle")(lambda: _conformality((1, 1)))
# where f' = 1 + 2i has negative Minkowski square, the (1,1) angle flips sign
check(13, "square-flips-minkowski-angle-upper-quadrant")(
    lambda: _conformality((1, 1), (0.5, 1.0), (1.0, 0.0), (1.0, 0.5)))


# ---------------------------------------------------------------------------
# 14. M * L bound
# ---------------------------------------------------------------------------

@check(14, "ml-bound-corpus")
def _ml():
    cases = [(f, c) for _, f, c in corpus.goursat_corpus()]
    cases.append((field_from_expr("z^2"), corpus.ellipse21()))
    cases.append((field_from_expr("exp(z)"), Curve.unit_circle()))
    worst = 0.0
    for f, c in cases:
        n = euclid_norm(contour.integrate(f, c).value)
        worst = max(worst, n / contour.ml_bound(f, c).bound)
    return worst <= 1.0, f"max |integral| / (M L) = {_fmt(worst)} over {len(cases)} cases"


@check(14, "ml-bound-tight-on-segment")
def _ml_tight():
    f = field_from_expr("1")
    c = Curve.segment(HNumber(0.0, 0.0), HNumber(3.0, 4.0))
    n = euclid_norm(contour.integrate(f, c).value)
    gap = abs(contour.ml_bound(f, c).bound - n)
    return gap < 1e-10, f"|integral| = {n:.12g}, M L - |integral| = {_fmt(gap)}"


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def _run_one(entry):
    criterion, name, fn = entry
    t0 = time.perf_counter()
    try:
        passed, detail, *note = fn()
    except HypError as exc:
        passed, detail, note = False, f"{exc.kind}: {exc}", []
    return CheckResult(name, criterion, bool(passed), detail, time.perf_counter() - t0,
                       note[0] if note else "")


def run_suite(threads=1, only=None):
    """Run every check (or those in criteria ``only``) in declaration order."""
    entries = [e for e in _CHECKS if only is None or e[0] in only]
    if threads <= 1:
        return [_run_one(e) for e in entries]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_run_one, entries))


def format_table(results):
    width = max(len(r.name) for r in results)
    lines = [f"{'crit':>4}  {'check':<{width}}  result  detail"]
    for r in results:
        extra = f" ({r.note})" if r.note else ""
        lines.append(f"{r.criterion:>4}  {r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  "
                     f"{r.detail}{extra}")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines)
