import math

import numpy as np
import pytest
from scipy import integrate as sci

from hypan import contour, corpus
from hypan.contour import Curve, IntegralResult
from hypan.diffcalc import Field2
from hypan.errors import Inconclusive, InvalidInput, PvNonconvergent
from hypan.expr import field_from_expr
from hypan.hypercore import HNumber, euclid_norm
from hypan.specfun import exp as hexp

TWO_PI_I_INV = HNumber(0.0, 1.0 / (2 * math.pi))


def norm(r):
    return euclid_norm(r.value)


# -- closed curves ------------------------------------------------------------

@pytest.mark.parametrize("src, curve", [
    ("z^2", corpus.ellipse21), ("exp(z)", corpus.ellipse21), ("1/z", corpus.shifted_ellipse),
])
def test_goursat_examples(src, curve):
    r = contour.integrate(field_from_expr(src), curve())
    assert r.status == contour.CONVERGED and norm(r) < 1e-8


def test_goursat_property_suite():
    for label, f, c in corpus.goursat_corpus():
        assert norm(contour.integrate(f, c)) < 1e-7, label


def test_json_fixture_curve_matches_constructor():
    a = contour.integrate(field_from_expr("exp(z)"), corpus.load_curve("ellipse21.json"))
    assert norm(a) < 1e-8


# -- open curves against independent oracles ---------------------------------

def test_segment_against_antiderivative():
    z0, z1 = HNumber(0.2, -0.3), HNumber(1.5, 0.9)
    r = contour.integrate(field_from_expr("z^2"), Curve.segment(z0, z1))
    exact = (z1 * z1 * z1 - z0 * z0 * z0) * (1.0 / 3.0)
    assert euclid_norm(r.value - exact) < 1e-12
    r = contour.integrate(field_from_expr("exp(z)"), Curve.segment(z0, z1))
    assert euclid_norm(r.value - (hexp(z1) - hexp(z0))) < 1e-12


def test_nonanalytic_integrand_against_scipy():
    # f = conj(z) on a quarter ellipse; f dz = (u x' + v y') + i (v x' + u y')
    c = Curve.ellipse(2.0, 1.0).restrict(0.0, math.pi / 2)
    r = contour.integrate(field_from_expr("conj(z)"), c)

    def part(k):
        def g(t):
            x, y, dx, dy = 2 * math.cos(t), math.sin(t), -2 * math.sin(t), math.cos(t)
            u, v = x, -y
            return (u * dx + v * dy) if k == 0 else (v * dx + u * dy)
        return sci.quad(g, 0.0, math.pi / 2, epsabs=1e-13)[0]

    assert r.value.re == pytest.approx(part(0), abs=1e-11)
    assert r.value.im == pytest.approx(part(1), abs=1e-11)


def test_orientation_and_additivity():
    f = field_from_expr("z*conj(z) + exp(z)")
    c = Curve.ellipse(1.3, 0.7, center=(0.2, 0.1))
    whole = contour.integrate(f, c).value
    back = contour.integrate(f, c.reversed()).value
    assert euclid_norm(whole + back) < 1e-12
    a = contour.integrate(f, c.restrict(0.0, 2.0)).value
    b = contour.integrate(f, c.restrict(2.0, 2 * math.pi)).value
    assert euclid_norm(a + b - whole) < 2e-10


# -- principal values ---------------------------------------------------------

def test_pv_cauchy_counterexample():
    circle = corpus.unit_circle_pv()
    total = contour.integrate_pv(field_from_expr("(z^2+1)/z"), circle)
    assert total.status == contour.PRINCIPAL_VALUE
    scaled = total.value * TWO_PI_I_INV
    assert euclid_norm(scaled) < 1e-6
    assert euclid_norm(scaled - HNumber(1, 0)) > 0.5   # f(0) = 1


def test_pv_real_subintegrals():
    sing = corpus.QUARTER_PI_ODD
    i1 = lambda t: (np.sin(t) * np.cos(t) / (np.cos(t) ** 2 - np.sin(t) ** 2))[None, :]  # noqa: E731
    i2 = lambda t: (1.0 / (np.cos(t) ** 2 - np.sin(t) ** 2))[None, :]  # noqa: E731
    for g in (i1, i2):
        value, _, _ = contour.principal_value(g, 0.0, 2 * math.pi, sing)
        assert abs(value[0]) < 1e-6


def test_pv_invariant_under_parameter_shift():
    f = field_from_expr("1/z")
    a = contour.integrate_pv(f, corpus.unit_circle_pv()).value
    shifted = Curve.unit_circle(singular_ts=[s + 2 * math.pi for s in corpus.QUARTER_PI_ODD],
                                t0=2 * math.pi)
    b = contour.integrate_pv(f, shifted).value
    assert euclid_norm(a - b) < 1e-8


def test_pv_of_double_pole_does_not_converge():
    g = lambda t: (1.0 / (t - 1.0) ** 2)[None, :]  # noqa: E731
    with pytest.raises(PvNonconvergent):
        contour.principal_value(g, 0.0, 2.0, [1.0])


def test_pv_known_value():
    # PV of 1/t over [-1, 2] is log 2
    value, _, _ = contour.principal_value(lambda t: (1.0 / t)[None, :], -1.0, 2.0, [0.0])
    assert value[0] == pytest.approx(math.log(2.0), abs=1e-8)


# -- infinite curves ------------------------------------------------------------

def test_hyperbola_counterexamples_diverge():
    for src in ("exp(z)", "z^2"):
        r = contour.integrate_improper(field_from_expr(src), corpus.hyperbola_right())
        assert r.status == contour.DIVERGENT and r.value is None


def test_zero_field_converges():
    zero = Field2(lambda x, y: 0 * x, lambda x, y: 0 * y)
    r = contour.integrate_improper(zero, corpus.hyperbola_right())
    assert r.status == contour.CONVERGED and r.value == HNumber(0, 0)


def test_short_ladder_is_inconclusive():
    with pytest.raises(Inconclusive):
        contour.integrate_improper(field_from_expr("exp(z)"), corpus.hyperbola_right(), ladder=(1, 2))


def test_combined_branches():
    f = field_from_expr("(z^2+1)/z")
    c1, c2 = corpus.hyperbola_right(), corpus.hyperbola_left()
    diff = contour.integrate_combined([(f, c1, 1), (f, c2, -1)], prefactor=TWO_PI_I_INV)
    assert diff.status == contour.CONVERGED and norm(diff) < 1e-6
    assert euclid_norm(diff.value - HNumber(1, 0)) > 0.5
    total = contour.integrate_combined([(f, c1, 1), (f, c2, 1)], prefactor=TWO_PI_I_INV)
    assert total.status == contour.DIVERGENT
    # the finite windows match the closed form (2 sinh 2T + 4T) / (2 pi)
    for T, v in total.partials[:5]:
        expected = (2 * math.sinh(2 * T) + 4 * T) / (2 * math.pi)
        assert euclid_norm(v) == pytest.approx(expected, rel=1e-8)


def test_combined_opposite_terms_cancel_on_finite_curve():
    f = field_from_expr("exp(z)")
    c = Curve.ellipse(1.0, 2.0)
    r = contour.integrate_combined([(f, c, 1), (f, c, -1)])
    assert r.status == contour.CONVERGED and r.value == HNumber(0, 0)


def test_combined_needs_shared_range():
    f = field_from_expr("z")
    with pytest.raises(InvalidInput):
        contour.integrate_combined([(f, Curve.ellipse(1, 1), 1), (f, corpus.hyperbola_right(), 1)])


# -- ML bound -------------------------------------------------------------------

def test_ml_examples():
    one = field_from_expr("1")
    seg = Curve.segment(HNumber(0, 0), HNumber(3, 4))
    ml = contour.ml_bound(one, seg)
    assert ml.M == pytest.approx(1.0) and ml.L == pytest.approx(5.0, abs=1e-12)
    assert abs(norm(contour.integrate(one, seg)) - ml.bound) < 1e-10
    for f, c in [(field_from_expr("z^2"), corpus.ellipse21()),
                 (field_from_expr("exp(z)"), Curve.unit_circle())]:
        assert norm(contour.integrate(f, c)) <= contour.ml_bound(f, c).bound


def test_ml_bound_holds_on_property_suite():
    for label, f, c in corpus.goursat_corpus():
        assert norm(contour.integrate(f, c)) <= contour.ml_bound(f, c).bound, label


def test_ml_bound_can_fail_off_the_closed_corpus():
    # the Euclidean norm is not submultiplicative on the hyperbolic plane:
    # ||(1+i)(1+i)|| = 2 sqrt 2 exceeds ||1+i||^2 = 2
    f = field_from_expr("1 + i")
    seg = Curve.segment(HNumber(0, 0), HNumber(1, 1))
    assert norm(contour.integrate(f, seg)) == pytest.approx(2 * math.sqrt(2))
    assert contour.ml_bound(f, seg).bound == pytest.approx(2.0)


# -- curves and results -----------------------------------------------------

def test_curve_validation():
    with pytest.raises(InvalidInput):
        Curve(np.cos, np.sin, 1.0, 0.0)
    with pytest.raises(InvalidInput):
        Curve(np.cos, np.sin, 0.0, 1.0, closed=True)
    with pytest.raises(InvalidInput):
        Curve.unit_circle(singular_ts=[7.0])
    with pytest.raises(InvalidInput):
        contour.integrate_improper(field_from_expr("z"), Curve.unit_circle())


def test_curve_json():
    obj = {"x": "cos(t)", "y": "2*sin(t)", "t": [0, "2*pi"], "closed": True, "singular_ts": ["pi/2"]}
    c = Curve.from_json(obj)
    assert c.t_max == pytest.approx(2 * math.pi) and c.singular_ts == (pytest.approx(math.pi / 2),)
    assert c.to_json() == obj
    assert float(c.dy(0.0)) == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(InvalidInput):
        Curve.from_json({"x": "t"})
    with pytest.raises(InvalidInput):
        Curve.ellipse(1, 1).to_json()


def test_divergent_result_has_no_value():
    r = IntegralResult(contour.DIVERGENT, HNumber(1, 1))
    assert r.value is None and r.to_json()["value"] is None
    with pytest.raises(InvalidInput):
        IntegralResult(contour.CONVERGED)
