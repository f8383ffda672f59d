"""Contour integrals of hyperbolic-valued functions along parametric curves.

With ``f = u + i v`` and ``dz = dx + i dy``, the rule ``i**2 = +1`` gives

    f dz = (u dx + v dy) + i (v dx + u dy),

so both real pullback integrands are assembled from the same four numbers
and integrated together on one adaptive panel set.

Beyond plain integrals on finite curves this module handles symmetric
principal values across singular parameters, truncation ladders over
infinite parameter ranges (with a divergence verdict), signed combinations
of several curves integrated as one integrand, and the M*L estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from .diffcalc import Field2, _eval
from .errors import (
    EvaluationDomain,
    Inconclusive,
    InvalidInput,
    PvNonconvergent,
    QuadratureFailure,
)
from .hypercore import HNumber, ONE, euclid_norm
from .quadrature import gauss_kronrod

CONVERGED = "Converged"
DIVERGENT = "Divergent"
PRINCIPAL_VALUE = "PrincipalValue"

DEFAULT_EPS_LADDER = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
DEFAULT_T_LADDER = tuple(float(t) for t in range(1, 13))
GROWTH_FACTOR = 2.0
GROWTH_FLOOR = 1e6
GROWTH_STEPS = 3


def _fd_derivative(g, h=1e-3):
    """Richardson-extrapolated central difference ``t -> g'(t)``, vectorised."""

    def dg(t):
        t = np.asarray(t, dtype=float)
        s = h * (1.0 + np.abs(t))
        d = [(np.asarray(g(t + s / 2 ** k)) - np.asarray(g(t - s / 2 ** k))) / (2 * s / 2 ** k)
             for k in range(3)]
        d1 = [(4 * b - a) / 3 for a, b in zip(d[:-1], d[1:])]
        return (16 * d1[1] - d1[0]) / 15

    return dg


class Curve:
    """A parametric path ``t -> (x(t), y(t))`` for ``t`` in ``[t_min, t_max]``.

    The component callables must accept numpy arrays. Derivatives default
    to finite differences. ``singular_ts`` lists interior parameters where an
    integrand is expected to blow up; only :func:`integrate_pv` uses them.
    Infinite endpoints are allowed and are handled by
    :func:`integrate_improper`.
    """

    def __init__(self, x, y, t_min, t_max, dx=None, dy=None, singular_ts=(),
                 closed=False, name=None, source=None):
        t_min, t_max = float(t_min), float(t_max)
        if not t_min < t_max:
            raise InvalidInput(f"curve needs t_min < t_max, got [{t_min}, {t_max}]")
        sing = sorted(float(s) for s in singular_ts)
        if any(not t_min < s < t_max for s in sing):
            raise InvalidInput("singular parameters must lie strictly inside the parameter range")
        if any(b - a <= 0 for a, b in zip(sing[:-1], sing[1:])):
            raise InvalidInput("singular parameters must be distinct")
        self.x, self.y = x, y
        self.dx = dx or _fd_derivative(x)
        self.dy = dy or _fd_derivative(y)
        self.t_min, self.t_max = t_min, t_max
        self.singular_ts = tuple(sing)
        self.closed = bool(closed)
        self.name = name or "curve"
        self.source = source
        if closed:
            if not self.finite:
                raise InvalidInput("a closed curve needs a finite parameter range")
            p0 = np.array([float(x(t_min)), float(y(t_min))])
            p1 = np.array([float(x(t_max)), float(y(t_max))])
            if np.hypot(*(p1 - p0)) > 1e-12 * (1.0 + np.hypot(*p0)):
                raise InvalidInput("closed curve does not return to its starting point")

    @property
    def finite(self):
        return math.isfinite(self.t_min) and math.isfinite(self.t_max)

    def point(self, t):
        return HNumber(float(self.x(t)), float(self.y(t)))

    def __repr__(self):
        return f"Curve({self.name}, [{self.t_min}, {self.t_max}])"

    # -- constructors -----------------------------------------------------

    @classmethod
    def ellipse(cls, a, b, center=(0.0, 0.0), singular_ts=(), t0=0.0):
        """``center + a cos t + i b sin t`` for ``t`` in ``[t0, t0 + 2 pi]``."""
        cx, cy = center
        return cls(
            lambda t: cx + a * np.cos(t), lambda t: cy + b * np.sin(t),
            t0, t0 + 2 * math.pi,
            dx=lambda t: -a * np.sin(t), dy=lambda t: b * np.cos(t),
            singular_ts=singular_ts, closed=True, name=f"ellipse(a={a}, b={b}, center={center})",
        )

    @classmethod
    def unit_circle(cls, singular_ts=(), t0=0.0):
        return cls.ellipse(1.0, 1.0, singular_ts=singular_ts, t0=t0)

    @classmethod
    def hyperbola_branch(cls, sign=1):
        """``sign * (cosh t, sinh t)`` over the whole real line."""
        s = float(sign)
        return cls(
            lambda t: s * np.cosh(t), lambda t: s * np.sinh(t), -math.inf, math.inf,
            dx=lambda t: s * np.sinh(t), dy=lambda t: s * np.cosh(t),
            name=f"hyperbola({'+' if s > 0 else '-'})",
        )

    @classmethod
    def segment(cls, z0, z1):
        z0, z1 = HNumber(float(z0.re), float(z0.im)), HNumber(float(z1.re), float(z1.im))
        ddx, ddy = z1.re - z0.re, z1.im - z0.im
        return cls(
            lambda t: z0.re + ddx * np.asarray(t), lambda t: z0.im + ddy * np.asarray(t), 0.0, 1.0,
            dx=lambda t: ddx + 0.0 * np.asarray(t), dy=lambda t: ddy + 0.0 * np.asarray(t),
            name=f"segment({z0}, {z1})",
        )

    # -- derived curves ---------------------------------------------------

    def reversed(self):
        """Same path traversed backwards over the same parameter range."""
        if not self.finite:
            raise InvalidInput("only finite curves can be reversed")
        a, b = self.t_min, self.t_max
        x, y, dx, dy = self.x, self.y, self.dx, self.dy
        return Curve(
            lambda t: x(a + b - np.asarray(t)), lambda t: y(a + b - np.asarray(t)), a, b,
            dx=lambda t: -np.asarray(dx(a + b - np.asarray(t))),
            dy=lambda t: -np.asarray(dy(a + b - np.asarray(t))),
            singular_ts=[a + b - s for s in self.singular_ts], closed=self.closed,
            name=f"reversed({self.name})",
        )

    def restrict(self, a, b):
        a, b = max(a, self.t_min), min(b, self.t_max)
        return Curve(self.x, self.y, a, b, dx=self.dx, dy=self.dy,
                     singular_ts=[s for s in self.singular_ts if a < s < b],
                     name=f"{self.name}[{a:g}, {b:g}]")

    # -- JSON ---------------------------------------------------------------

    @classmethod
    def from_json(cls, obj):
        """Build a curve from ``{"x": expr, "y": expr, "t": [a, b], ...}``.

        ``x`` and ``y`` are real expressions in ``t``; range ends and singular
        parameters may be numbers, ``"-inf"``/``"inf"`` or constant expressions
        such as ``"3*pi/4"``.
        """
        from . import expr

        try:
            x_src, y_src = obj["x"], obj["y"]
            t_range = obj["t"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"curve JSON needs x, y and t fields: {exc}") from exc
        if len(t_range) != 2:
            raise InvalidInput("curve JSON field t must have two entries")
        x_ast = expr.parse(x_src, var="t")
        y_ast = expr.parse(y_src, var="t")
        t_min, t_max = (_json_real(v) for v in t_range)
        return cls(
            lambda t: expr.evaluate(x_ast, t, mode="real"),
            lambda t: expr.evaluate(y_ast, t, mode="real"),
            t_min, t_max,
            singular_ts=[_json_real(s) for s in obj.get("singular_ts", [])],
            closed=bool(obj.get("closed", False)),
            name=obj.get("name", f"({x_src}, {y_src})"),
            source=dict(obj),
        )

    def to_json(self):
        if self.source is None:
            raise InvalidInput("only curves built from JSON expressions can be serialised")
        return dict(self.source)


def _json_real(v):
    if isinstance(v, (int, float)):
        return float(v)
    text = str(v).strip().lower()
    if text in ("inf", "+inf", "infinity"):
        return math.inf
    if text in ("-inf", "-infinity"):
        return -math.inf
    from . import expr

    return float(expr.evaluate(expr.parse(text, var="t"), None, mode="real"))


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass
class IntegralResult:
    status: str
    value: HNumber = None
    err_estimate: float = 0.0
    panels: int = 0
    method: str = "gauss-kronrod"
    partials: list = dc_field(default_factory=list)  # (T, value) pairs from a ladder

    def __post_init__(self):
        if self.status == DIVERGENT:
            self.value = None
        elif self.value is None:
            raise InvalidInput(f"{self.status} result needs a value")

    def to_json(self):
        out = {
            "status": self.status,
            "value": None if self.value is None else self.value.to_json(),
            "err_estimate": float(self.err_estimate),
            "panels": int(self.panels),
            "method": self.method,
        }
        if self.partials:
            out["partials"] = [
                {"T": t, "value": None if v is None else v.to_json()} for t, v in self.partials
            ]
        return out


# ---------------------------------------------------------------------------
# integrands
# ---------------------------------------------------------------------------

def _pullback(terms):
    """Integrand ``t -> [Re, Im]`` for a signed sum of (field, curve) terms."""

    def g(t):
        re = np.zeros_like(t)
        im = np.zeros_like(t)
        for f, c, sign in terms:
            x = np.broadcast_to(np.asarray(c.x(t), dtype=float), t.shape)
            y = np.broadcast_to(np.asarray(c.y(t), dtype=float), t.shape)
            u, v = _eval(f, x, y)
            xp = np.asarray(c.dx(t), dtype=float)
            yp = np.asarray(c.dy(t), dtype=float)
            re = re + sign * (u * xp + v * yp)
            im = im + sign * (v * xp + u * yp)
        return np.vstack([re, im])

    return g


def _quad(g, a, b, tol, rtol=1e-12, on_budget="raise"):
    return gauss_kronrod(g, a, b, ncomp=2, atol=tol, rtol=rtol, on_budget=on_budget)


# ---------------------------------------------------------------------------
# plain integrals
# ---------------------------------------------------------------------------

def integrate(f: Field2, c: Curve, tol=1e-10):
    """``integral_C f dz`` on a finite curve without singular parameters."""
    if not c.finite:
        raise InvalidInput("integrate needs a finite curve; use integrate_improper")
    if c.singular_ts:
        raise InvalidInput("curve has singular parameters; use integrate_pv")
    r = _quad(_pullback([(f, c, 1.0)]), c.t_min, c.t_max, tol)
    if not r.finite:
        raise EvaluationDomain(f"integrand is not finite along {c.name}")
    return IntegralResult(CONVERGED, HNumber(float(r.value[0]), float(r.value[1])),
                          float(np.max(r.error)), r.panels)


# ---------------------------------------------------------------------------
# principal values
# ---------------------------------------------------------------------------

def _excised(g, a, b, sing, eps, tol, ncomp):
    """Integral over ``[a, b]`` minus symmetric ``eps``-windows around ``sing``."""
    cuts = [a]
    for s in sing:
        cuts += [s - eps, s + eps]
    cuts.append(b)
    total = np.zeros(ncomp)
    err = 0.0
    panels = 0
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        if not hi > lo:
            raise InvalidInput(f"excision radius {eps:g} overlaps neighbouring singular points")
        r = gauss_kronrod(g, lo, hi, ncomp=ncomp, atol=tol, rtol=1e-12)
        if not r.finite:
            raise EvaluationDomain("integrand is not finite away from the listed singular parameters")
        total += r.value
        err += float(np.max(r.error))
        panels += r.panels
    return total, err, panels


def _neville_zero(xs, ys):
    """Value at 0 of the interpolating polynomial through ``(xs, ys)``, and the
    difference from the next-lower-degree estimate."""
    p = [np.asarray(y, dtype=float) for y in ys]
    prev = p[-1]
    n = len(xs)
    for m in range(1, n):
        prev = p[-1]
        p = [((0 - xs[i + m]) * p[i] + (xs[i] - 0) * p[i + 1]) / (xs[i] - xs[i + m])
             for i in range(n - m)]
    return p[0], np.abs(p[0] - prev)


def principal_value(g, a, b, singular_ts, ncomp=1, tol=1e-10, eps_ladder=DEFAULT_EPS_LADDER):
    """Symmetric principal value of a vector integrand ``g`` on ``[a, b]``.

    The excised integral is computed for each ``eps`` in the ladder and the
    sequence is extrapolated to ``eps = 0``. Returns ``(value, error, panels)``.
    """
    eps_ladder = sorted((float(e) for e in eps_ladder), reverse=True)
    if len(eps_ladder) < 2:
        raise InvalidInput("principal value needs at least two excision radii")
    vals, errs, panels = [], [], 0
    for eps in eps_ladder:
        v, e, p = _excised(g, a, b, sorted(singular_ts), eps, tol, ncomp)
        vals.append(v)
        errs.append(e)
        panels += p
    diffs = [float(np.max(np.abs(y - x))) for x, y in zip(vals[:-1], vals[1:])]
    value, extrap_err = _neville_zero(eps_ladder, vals)
    scale = 1.0 + float(np.max(np.abs(value)))
    growing = all(y > x for x, y in zip(diffs[:-1], diffs[1:])) and diffs[-1] > 1e-6 * scale
    if growing or diffs[-1] > 1e-3 * scale:
        raise PvNonconvergent(
            f"excised integrals do not settle as eps -> 0 (successive differences {diffs})"
        )
    return value, float(np.max(extrap_err)) + max(errs), panels


def integrate_pv(f: Field2, c: Curve, tol=1e-10, eps_ladder=DEFAULT_EPS_LADDER):
    """Symmetric principal value of ``integral_C f dz`` across ``c.singular_ts``."""
    if not c.finite:
        raise InvalidInput("integrate_pv needs a finite curve")
    if not c.singular_ts:
        raise InvalidInput("integrate_pv needs at least one singular parameter")
    value, err, panels = principal_value(_pullback([(f, c, 1.0)]), c.t_min, c.t_max,
                                         c.singular_ts, 2, tol, eps_ladder)
    return IntegralResult(PRINCIPAL_VALUE, HNumber(float(value[0]), float(value[1])), err, panels,
                          method="pv-eps-ladder")


# ---------------------------------------------------------------------------
# infinite parameter ranges
# ---------------------------------------------------------------------------

def _ladder(g, t_min, t_max, ladder, tol, prefactor, method):
    """Integrate over growing windows and classify the sequence of partials."""
    partials = []
    norms = []
    streak = 0
    panels = 0
    prefactor = prefactor or ONE
    for T in ladder:
        a = max(t_min, -T)
        b = min(t_max, T)
        # rounding noise in integrands near the diagonals can stall refinement;
        # a few correct digits are enough to judge growth
        r = _quad(g, a, b, tol, rtol=1e-10, on_budget="return")
        if r.finite and not r.converged and np.max(r.error) > 1e-3 * np.linalg.norm(r.value):
            raise QuadratureFailure(
                f"partial integral on [{a:g}, {b:g}] not resolved (error {np.max(r.error):.3g})"
            )
        if not r.finite or not np.all(np.isfinite(r.value)):
            # the partial overflowed double precision
            partials.append((T, None))
            return IntegralResult(DIVERGENT, None, math.inf, panels, method, partials)
        panels += r.panels
        value = prefactor * HNumber(float(r.value[0]), float(r.value[1]))
        if not (math.isfinite(value.re) and math.isfinite(value.im)):
            partials.append((T, None))
            return IntegralResult(DIVERGENT, None, math.inf, panels, method, partials)
        partials.append((T, value))
        n = euclid_norm(value)
        if norms and n > GROWTH_FACTOR * norms[-1] and n > GROWTH_FLOOR:
            streak += 1
        else:
            streak = 0
        norms.append(n)
        if streak >= GROWTH_STEPS:
            return IntegralResult(DIVERGENT, None, math.inf, panels, method, partials)
        if len(partials) >= 3:
            v0, v1, v2 = (p[1] for p in partials[-3:])
            d1 = euclid_norm(v1 - v0)
            d2 = euclid_norm(v2 - v1)
            if d1 < tol and d2 < tol and r.converged:
                return IntegralResult(CONVERGED, v2, d2, panels, method, partials)
    raise Inconclusive(
        f"neither convergence nor divergence was established by T = {ladder[-1]:g}"
    )


def integrate_improper(f: Field2, c: Curve, ladder=DEFAULT_T_LADDER, tol=1e-8):
    """Integral over an infinite parameter range via the windows ``[-T, T]``.

    Divergent when the partials more than double three steps running while
    exceeding 1e6 in norm, or when a partial overflows; Converged when two
    successive differences fall below ``tol``.
    """
    if c.finite:
        raise InvalidInput("integrate_improper needs an infinite parameter range")
    return _ladder(_pullback([(f, c, 1.0)]), c.t_min, c.t_max, tuple(ladder), tol, None,
                   "truncation-ladder")


def integrate_combined(terms, ladder=DEFAULT_T_LADDER, tol=1e-8, prefactor=None):
    """``prefactor * sum(sign * integral_{c} f dz)`` integrated as one integrand.

    ``terms`` holds ``(field, curve, sign)`` triples whose curves share a
    parameter range. Summing before integrating lets cancellations happen
    pointwise, before any truncation limit is taken.
    """
    terms = [(f, c, float(s)) for f, c, s in terms]
    if not terms:
        raise InvalidInput("integrate_combined needs at least one term")
    t_min, t_max = terms[0][1].t_min, terms[0][1].t_max
    if any(c.t_min != t_min or c.t_max != t_max for _, c, _ in terms):
        raise InvalidInput("combined curves must share one parameter range")
    g = _pullback(terms)
    if math.isfinite(t_min) and math.isfinite(t_max):
        r = _quad(g, t_min, t_max, tol)
        if not r.finite:
            raise EvaluationDomain("combined integrand is not finite")
        value = (prefactor or ONE) * HNumber(float(r.value[0]), float(r.value[1]))
        return IntegralResult(CONVERGED, value, float(np.max(r.error)), r.panels, "combined")
    return _ladder(g, t_min, t_max, tuple(ladder), tol, prefactor, "combined-ladder")


# ---------------------------------------------------------------------------
# M * L estimate
# ---------------------------------------------------------------------------

class MLBound(NamedTuple):
    M: float
    L: float

    @property
    def bound(self):
        return self.M * self.L


def ml_bound(f: Field2, c: Curve, samples=720):
    """Sampled sup of ``||f||`` on the curve and its Euclidean arclength."""
    if not c.finite:
        raise InvalidInput("ml_bound needs a finite curve")
    t = np.linspace(c.t_min, c.t_max, samples + 1)
    u, v = _eval(f, np.asarray(c.x(t), dtype=float) + 0 * t, np.asarray(c.y(t), dtype=float) + 0 * t)
    M = float(np.max(np.hypot(u, v)))

    def speed(s):
        return np.hypot(np.asarray(c.dx(s), dtype=float), np.asarray(c.dy(s), dtype=float))[None, :]

    L = float(gauss_kronrod(speed, c.t_min, c.t_max, ncomp=1, atol=1e-12).value[0])
    return MLBound(M, L)
