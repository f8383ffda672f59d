import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import fsolve

from hypan.errors import BranchUnavailable, InvalidInput, NotInvertible
from hypan.hypercore import I, HNumber, Quadrant, euclid_norm, quadrant
from hypan.roots import no_go_witness, quadratic_solve, residual, sqrt_all, sqrt_branch
from hypan.suite import brute_force_sqrt, same_set


def newton_sqrt(z):
    """Multi-start Newton on a^2 + b^2 = x, 2ab = y, deduplicated."""
    x, y = float(z.re), float(z.im)
    eqs = lambda v: [v[0] ** 2 + v[1] ** 2 - x, 2 * v[0] * v[1] - y]  # noqa: E731
    s = np.sqrt(abs(x) + abs(y)) + 1.0
    found = []
    for a0, b0 in itertools.product(np.linspace(-s, s, 7), repeat=2):
        v, _, ok, _ = fsolve(eqs, [a0, b0], full_output=True, xtol=1e-14)
        if ok != 1 or max(abs(e) for e in eqs(v)) > 1e-10 * (1 + abs(x) + abs(y)):
            continue
        r = HNumber(float(v[0]), float(v[1]))
        if all(euclid_norm(r - q) > 1e-7 for q in found):
            found.append(r)
    return found


def as_set(roots):
    return {(round(float(r.re), 9) + 0.0, round(float(r.im), 9) + 0.0) for r in roots}


def test_sqrt_examples():
    assert as_set(sqrt_all(HNumber(1, 0))) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(sqrt_all(HNumber(-4, 0))) == 0
    z = HNumber(2, 1)
    rs = sqrt_all(z)
    assert len(rs) == 4 and all(euclid_norm(r * r - z) < 1e-12 for r in rs)
    assert same_set(list(rs), newton_sqrt(z), 1e-8)


def test_degenerate_counts():
    one_zero = sqrt_all(HNumber(2, 2))     # m = 0
    assert len(one_zero) == 2 and one_zero.degenerate
    assert all(euclid_norm(r * r - HNumber(2, 2)) < 1e-12 for r in one_zero)
    origin = sqrt_all(HNumber(0, 0))
    assert list(origin) == [HNumber(0, 0)] and not origin.degenerate
    assert len(sqrt_all(HNumber(1, 2))) == 0     # m < 0


@pytest.mark.parametrize("sheet, expected", [(1, HNumber(3, 0)), (2, HNumber(-3, 0)),
                                             (3, HNumber(0, 3)), (4, HNumber(0, -3))])
def test_branch_sheets_on_nine(sheet, expected):
    assert sqrt_branch(HNumber(9, 0), sheet) == expected


def test_branch_errors():
    with pytest.raises(BranchUnavailable):
        sqrt_branch(HNumber(0, 0), 1)
    with pytest.raises(BranchUnavailable):
        sqrt_branch(HNumber(2, 2), 3)
    with pytest.raises(InvalidInput):
        sqrt_branch(HNumber(9, 0), 5)


def test_sheet_one_stays_in_first_quadrant():
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = rng.uniform(0.1, 5)
        z = HNumber(x, rng.uniform(-0.95, 0.95) * x)
        r = sqrt_branch(z, 1)
        assert quadrant(z) is Quadrant.H1 and r.re >= 0 and r.re >= abs(r.im)
        labels = dict(zip(sqrt_all(z).branch_labels, sqrt_all(z).roots))
        assert euclid_norm(labels[(1, 1)] - r) < 1e-14


def test_branch_accepts_arrays():
    z = HNumber(np.array([9.0, 4.0]), np.array([0.0, 1.0]))
    r = sqrt_branch(z, 3)
    sq = r * r
    assert np.allclose(sq.re, z.re) and np.allclose(sq.im, z.im)


def test_oracle_equivalence_with_newton():
    rng = np.random.default_rng(11)
    for x, y in rng.uniform(-4, 4, (60, 2)):
        z = HNumber(float(x), float(y))
        assert same_set(list(sqrt_all(z)), newton_sqrt(z), 1e-8), z


def test_suite_oracle_matches_newton():
    rng = np.random.default_rng(12)
    for x, y in rng.uniform(-4, 4, (30, 2)):
        z = HNumber(float(x), float(y))
        assert same_set(brute_force_sqrt(z), newton_sqrt(z), 1e-8)


finite = st.floats(-1e3, 1e3, allow_nan=False)


@given(finite, finite)
def test_bivocity_closure(x, y):
    rs = list(sqrt_all(HNumber(x, y)))
    if not rs:
        return
    tol = 1e-12 * (1 + euclid_norm(HNumber(x, y)))
    assert same_set([I * r for r in rs], rs, tol)
    assert same_set([-r for r in rs], rs, tol)
    for r in rs:
        assert euclid_norm(r * r - HNumber(x, y)) < 1e-10 * (1 + euclid_norm(HNumber(x, y)))


def test_quadratic_cases():
    one, zero = HNumber(1, 0), HNumber(0, 0)
    four = quadratic_solve(one, zero, HNumber(-1, 0))
    assert as_set(four) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    double = quadratic_solve(one, HNumber(2, 0), one)
    assert list(double) == [HNumber(-1, 0)]
    assert len(quadratic_solve(one, zero, one)) == 0


def test_quadratic_matches_formula_and_residual():
    rng = np.random.default_rng(5)
    for _ in range(200):
        a, b, c = (HNumber(*rng.uniform(-3, 3, 2)) for _ in range(3))
        if abs(float(a.re)) - abs(float(a.im)) == 0:
            continue
        sols = quadratic_solve(a, b, c)
        delta = b * b - 4.0 * (a * c)
        expected = [(r - b) / (2.0 * a) for r in sqrt_all(delta)]
        assert same_set(list(sols), expected, 1e-9)
        scale = 1 + euclid_norm(a) + euclid_norm(b) + euclid_norm(c)
        for z in sols:
            assert residual((a, b, c), z) < 1e-9 * scale * (1 + euclid_norm(z)) ** 2


def test_quadratic_degenerate_discriminant():
    # z^2 - (1 + i) = 0: discriminant 4(1+i) lies on a diagonal
    sols = quadratic_solve(HNumber(1, 0), HNumber(0, 0), HNumber(-1, -1))
    assert len(sols) == 2 and sols.degenerate
    assert all(residual((HNumber(1, 0), HNumber(0, 0), HNumber(-1, -1)), z) < 1e-12 for z in sols)


def test_quadratic_needs_invertible_leading_coefficient():
    with pytest.raises(NotInvertible):
        quadratic_solve(HNumber(1, 1), HNumber(0, 0), HNumber(1, 0))


def test_no_go_witness():
    w = no_go_witness()
    many, none = w.coefficients
    assert len(w.too_many) == 4 > 2 and len(w.none) == 0
    assert all(residual(many, z) < 1e-12 for z in w.too_many)


def test_rootset_json():
    js = sqrt_all(HNumber(1, 0)).to_json()
    assert js["branches"] == [[1, 1], [-1, -1], [1, -1], [-1, 1]]
    assert js["roots"][2] == {"re": 0.0, "im": 1.0} and js["degenerate"] is False
