import math

import numpy as np
import pytest
from scipy import integrate as sci

from hypan.errors import QuadratureFailure
from hypan.quadrature import G_WEIGHTS, K_WEIGHTS, NODES, gauss_kronrod


def scalar(fn):
    return lambda t: np.asarray(fn(t))[None, :]


def test_rule_tables():
    gauss_nodes, gauss_weights = np.polynomial.legendre.leggauss(7)
    odd = NODES[1::2]
    assert np.allclose(odd, gauss_nodes, atol=1e-15)
    assert np.allclose(G_WEIGHTS[1::2], gauss_weights, atol=1e-15)
    assert np.all(G_WEIGHTS[::2] == 0)
    assert K_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod-15 integrates polynomials of degree 22 exactly
    for deg in (0, 5, 14, 22):
        exact = 2.0 / (deg + 1) if deg % 2 == 0 else 0.0
        assert K_WEIGHTS @ NODES ** deg == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize("fn, a, b", [
    (np.sin, 0.0, math.pi),
    (lambda t: np.exp(-t * t), -3.0, 2.0),
    (lambda t: 1.0 / (1.0 + 25.0 * t * t), -1.0, 1.0),
    (lambda t: np.sqrt(np.abs(t)), -1.0, 1.0),
    (lambda t: np.cos(30.0 * t) * np.exp(t), 0.0, 2.0),
])
def test_matches_scipy(fn, a, b):
    ref, _ = sci.quad(lambda t: float(fn(np.array([t]))[0]), a, b, epsabs=1e-13, limit=200)
    r = gauss_kronrod(scalar(fn), a, b, atol=1e-11)
    assert r.converged and r.finite
    assert r.value[0] == pytest.approx(ref, abs=1e-10)


def test_vector_components_share_panels():
    r = gauss_kronrod(lambda t: np.vstack([np.cos(t), np.sin(t)]), 0.0, 1.0, ncomp=2)
    assert r.value == pytest.approx([math.sin(1.0), 1.0 - math.cos(1.0)], abs=1e-13)


def test_breakpoints_are_panel_edges():
    kink = lambda t: np.abs(t - 0.3)  # noqa: E731
    with_bp = gauss_kronrod(scalar(kink), 0.0, 1.0, breakpoints=[0.3])
    assert with_bp.value[0] == pytest.approx(0.5 * (0.3 ** 2 + 0.7 ** 2), abs=1e-15)
    assert with_bp.panels == 16


def test_non_finite_integrand_is_flagged():
    r = gauss_kronrod(scalar(lambda t: 1.0 / (t - 0.5)), 0.0, 1.0, initial_panels=3)
    assert not r.finite


def test_budget_exhaustion():
    wild = scalar(lambda t: np.sin(1.0 / (t + 1e-9)))
    with pytest.raises(QuadratureFailure):
        gauss_kronrod(wild, 0.0, 1.0, atol=1e-14, max_panels=64)
    r = gauss_kronrod(wild, 0.0, 1.0, atol=1e-14, max_panels=64, on_budget="return")
    assert not r.converged


def test_rejects_empty_interval():
    with pytest.raises(QuadratureFailure):
        gauss_kronrod(scalar(np.sin), 1.0, 1.0)
