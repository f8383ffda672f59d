import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypan import specfun
from hypan.errors import InvalidInput, MaxTermsExceeded
from hypan.hypercore import HNumber, euclid_norm
from hypan.specfun import SeriesConfig


def idempotent_exp(x, y):
    """exp(x + iy) = e^(x+y) e+ + e^(x-y) e-, from the host exponential."""
    p, m = math.exp(x + y), math.exp(x - y)
    return HNumber((p + m) / 2, (p - m) / 2)


def test_exp_zero_and_euler_example():
    assert specfun.exp(HNumber(0, 0)) == HNumber(1, 0)
    w = specfun.exp(HNumber(0, 0.7))
    assert w.re == pytest.approx(math.cosh(0.7), abs=1e-12)
    assert w.im == pytest.approx(math.sinh(0.7), abs=1e-12)


def test_exp_factorises():
    w = specfun.exp(HNumber(0.3, -1.1))
    e = math.exp(0.3)
    assert euclid_norm(w - HNumber(e * math.cosh(-1.1), e * math.sinh(-1.1))) < 1e-12


def test_cosh_sinh():
    assert specfun.cosh(HNumber(0, 0)) == HNumber(1, 0)
    assert specfun.sinh(HNumber(0, 0)) == HNumber(0, 0)
    z = HNumber(1, 2)
    assert euclid_norm(specfun.cosh(z) + specfun.sinh(z) - specfun.exp(z)) < 1e-11
    c = specfun.cosh(HNumber(0, 0.9))
    assert c.re == pytest.approx(math.cosh(0.9), abs=1e-15) and c.im == 0.0


def test_euler_grid():
    theta = np.linspace(-3, 3, 61)
    w = specfun.exp(HNumber(np.zeros_like(theta), theta))
    assert np.max(np.hypot(w.re - np.cosh(theta), w.im - np.sinh(theta))) < 1e-12
    e = specfun.euler(0.4)
    assert euclid_norm(e - HNumber(math.cosh(0.4), math.sinh(0.4))) < 1e-15


def test_large_arguments_use_scaling():
    # mpmath oracle at 50 digits, compared relatively
    for x, y in [(30.0, 5.0), (-10.0, 25.0), (0.0, 40.0)]:
        w = specfun.exp(HNumber(x, y))
        with mpmath.workdps(50):
            p, m = mpmath.exp(x + y), mpmath.exp(x - y)
            ref = (float((p + m) / 2), float((p - m) / 2))
        scale = math.hypot(*ref)
        assert math.hypot(w.re - ref[0], w.im - ref[1]) <= 1e-11 * scale


def test_series_budget():
    cfg = SeriesConfig(tol=1e-15, max_terms=8, scale_threshold=1e9)
    with pytest.raises(MaxTermsExceeded):
        specfun.exp(HNumber(3, 1), cfg)
    with pytest.raises(InvalidInput):
        SeriesConfig(tol=-1)


small = st.floats(-3, 3, allow_nan=False)
medium = st.floats(-1.4, 1.4, allow_nan=False)


@given(small, small)
def test_idempotent_oracle(x, y):
    w, ref = specfun.exp(HNumber(x, y)), idempotent_exp(x, y)
    assert euclid_norm(w - ref) <= 1e-11 * max(1.0, euclid_norm(ref))


@given(medium, medium, medium, medium)
def test_exp_homomorphism(a, b, c, d):
    z1, z2 = HNumber(a, b), HNumber(c, d)
    lhs = specfun.exp(z1 + z2)
    rhs = specfun.exp(z1) * specfun.exp(z2)
    assert euclid_norm(lhs - rhs) <= 1e-10 * max(1.0, euclid_norm(lhs))


def test_array_input_matches_scalar():
    xs, ys = np.linspace(-2, 2, 7), np.linspace(1, -1, 7)
    w = specfun.exp(HNumber(xs, ys))
    for k in range(7):
        s = specfun.exp(HNumber(float(xs[k]), float(ys[k])))
        assert w.re[k] == pytest.approx(s.re, rel=1e-15) and w.im[k] == pytest.approx(s.im, abs=1e-15 * abs(s.re))
