"""Finite-difference calculus for functions on the hyperbolic plane.

Fields are written ``f(x + i y) = u(x, y) + i v(x, y)``. Differentiability on
the hyperbolic numbers is equivalent to the hyperbolic Cauchy-Riemann system

    u_x = v_y,    u_y = v_x,

and both components of a differentiable field then solve the wave equation
``w_xx - w_yy = 0``. This module checks those facts numerically, and measures
how a field transforms angles between curves under the three quadratic forms
of signature (2,0), (1,1) and (0,2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import EvaluationDomain, HypError, InvalidInput, NullTangent
from .hypercore import HNumber, euclid_norm


class Field2:
    """A map of the plane given by its component functions.

    ``u`` and ``v`` take ``(x, y)`` and must accept numpy arrays. Use
    :meth:`from_hyperbolic` to wrap a function of an :class:`HNumber`.
    """

    def __init__(self, u, v, name=None):
        self.u = u
        self.v = v
        self.name = name or "field"
        self._joint = None

    @classmethod
    def from_hyperbolic(cls, f: Callable[[HNumber], HNumber], name=None):
        def joint(x, y):
            w = f(HNumber(x, y))
            return w.re, w.im

        field = cls(lambda x, y: joint(x, y)[0], lambda x, y: joint(x, y)[1], name)
        field._joint = joint
        return field

    def __call__(self, x, y):
        """Evaluate ``(u, v)`` at ``(x, y)``."""
        if self._joint is not None:
            return self._joint(x, y)
        return self.u(x, y), self.v(x, y)

    def __repr__(self):
        return f"Field2({self.name})"


def _eval(fn, x, y):
    """Evaluate ``fn`` on arrays and convert domain failures to EvaluationDomain."""
    try:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = fn(x, y)
    except EvaluationDomain:
        raise
    except (HypError, ZeroDivisionError, ValueError, OverflowError) as exc:
        raise EvaluationDomain(f"field not evaluable near ({_fmt_pts(x, y)}): {exc}") from exc
    if isinstance(out, tuple):
        out = tuple(np.broadcast_to(np.asarray(o, dtype=float), np.shape(x)) for o in out)
        finite = all(np.all(np.isfinite(o)) for o in out)
    else:
        out = np.broadcast_to(np.asarray(out, dtype=float), np.shape(x))
        finite = bool(np.all(np.isfinite(out)))
    if not finite:
        raise EvaluationDomain(f"field is not finite near ({_fmt_pts(x, y)})")
    return out


def _fmt_pts(x, y):
    x, y = np.ravel(x), np.ravel(y)
    return f"{x[x.size // 2]:.6g}, {y[y.size // 2]:.6g}"


# ---------------------------------------------------------------------------
# partial derivatives
# ---------------------------------------------------------------------------

def default_step(point, order=1):
    r = math.hypot(*point)
    if order == 1:
        return max(1e-5, 1e-7 * (1.0 + r))
    return max(1e-3, 1e-4 * (1.0 + r))


def _richardson(d, levels):
    """Extrapolate a sequence of O(h^2) estimates at h, h/2, h/4, ...

    Returns the best value and the size of its last correction.
    """
    table = list(d)
    if levels == 0 or len(table) == 1:
        return table[0], None
    factor = 4.0
    for _ in range(levels):
        table = [(factor * b - a) / (factor - 1.0) for a, b in zip(table[:-1], table[1:])]
        factor *= 4.0
    best = table[-1]
    return best, np.abs(best - d[-1])


@dataclass(frozen=True)
class Partials:
    """First (``order=1``) or second (``order=2``) partials of a field at a point."""

    order: int
    values: dict
    error: float

    def __getattr__(self, name):
        try:
            return self.__dict__["values"][name]
        except KeyError:
            raise AttributeError(name) from None

    def as_tuple(self):
        return tuple(self.values.values())


def _stencil_partials(fn, x, y, order, h, levels, ncomp):
    """Central-difference partials of the ``ncomp`` outputs of ``fn``.

    ``x`` and ``y`` may be arrays of points; ``h`` broadcasts against them.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    steps = [h / 2.0 ** k for k in range(levels + 1)]
    if order == 1:
        offsets = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)]  # centre only checks the domain
    else:
        offsets = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
    xs = np.stack([x + dx * s for s in steps for dx, _ in offsets])
    ys = np.stack([y + dy * s for s in steps for _, dy in offsets])
    out = _eval(fn, xs, ys)
    comps = out if ncomp > 1 else (out,)
    n_off = len(offsets)
    results = []
    worst = 0.0
    for c in comps:
        c = c.reshape((len(steps), n_off) + x.shape)
        names = []
        if order == 1:
            dx = [(c[k, 0] - c[k, 1]) / (2 * s) for k, s in enumerate(steps)]
            dy = [(c[k, 2] - c[k, 3]) / (2 * s) for k, s in enumerate(steps)]
            names = [dx, dy]
        else:
            dxx = [(c[k, 1] - 2 * c[k, 0] + c[k, 2]) / s ** 2 for k, s in enumerate(steps)]
            dyy = [(c[k, 3] - 2 * c[k, 0] + c[k, 4]) / s ** 2 for k, s in enumerate(steps)]
            dxy = [(c[k, 5] - c[k, 6] - c[k, 7] + c[k, 8]) / (4 * s ** 2) for k, s in enumerate(steps)]
            names = [dxx, dyy, dxy]
        for seq in names:
            best, err = _richardson(seq, levels)
            results.append(best)
            if err is not None:
                worst = max(worst, float(np.max(err)))
    return results, worst


def partials(field, point, order=1, h=None, levels=2):
    """Partial derivatives of ``field`` at ``point = (x, y)``.

    ``order=1`` gives ``u_x, u_y, v_x, v_y``; ``order=2`` gives
    ``u_xx, u_yy, u_xy, v_xx, v_yy, v_xy``. Central differences are combined
    over steps ``h, h/2, ..., h/2**levels`` by Richardson extrapolation, and
    the size of the last extrapolation correction is reported as ``error``.
    """
    if order not in (1, 2):
        raise InvalidInput(f"order must be 1 or 2, got {order}")
    x, y = float(point[0]), float(point[1])
    h = default_step((x, y), order) if h is None else float(h)
    vals, err = _stencil_partials(field, x, y, order, h, levels, 2)
    vals = [float(v) for v in vals]
    if order == 1:
        keys = ("ux", "uy", "vx", "vy")
    else:
        keys = ("uxx", "uyy", "uxy", "vxx", "vyy", "vxy")
    return Partials(order, dict(zip(keys, vals)), err)


def scalar_partials(fn, point, order=1, h=None, levels=2):
    """Like :func:`partials` for a single real function ``fn(x, y)``."""
    x, y = float(point[0]), float(point[1])
    h = default_step((x, y), order) if h is None else float(h)
    vals, err = _stencil_partials(fn, x, y, order, h, levels, 1)
    vals = [float(v) for v in vals]
    keys = ("x", "y") if order == 1 else ("xx", "yy", "xy")
    return Partials(order, dict(zip(keys, vals)), err)


# ---------------------------------------------------------------------------
# derivative and Cauchy-Riemann checks
# ---------------------------------------------------------------------------

class Derivative(NamedTuple):
    value: HNumber      # along the real direction: u_x + i v_x
    along_i: HNumber    # along the i direction: v_y + i u_y
    agrees: bool


def derivative(field, z0, tol=1e-6):
    """The derivative at ``z0`` estimated along both coordinate directions."""
    p = partials(field, (z0.re, z0.im))
    along_x = HNumber(p.ux, p.vx)
    along_i = HNumber(p.vy, p.uy)
    agrees = euclid_norm(along_x - along_i) <= tol
    return Derivative(along_x, along_i, bool(agrees))


@dataclass(frozen=True)
class RectGrid:
    """A uniform ``nx`` by ``ny`` lattice over ``[x0, x1] x [y0, y1]``."""

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int = 5
    ny: int = 5

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise InvalidInput("grid needs at least one node per axis")
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise InvalidInput("grid bounds are reversed")

    @classmethod
    def square(cls, lo, hi, n):
        return cls(lo, hi, lo, hi, n, n)

    @property
    def xs(self):
        return np.linspace(self.x0, self.x1, self.nx)

    @property
    def ys(self):
        return np.linspace(self.y0, self.y1, self.ny)

    @property
    def hx(self):
        return (self.x1 - self.x0) / (self.nx - 1) if self.nx > 1 else 0.0

    @property
    def hy(self):
        return (self.y1 - self.y0) / (self.ny - 1) if self.ny > 1 else 0.0

    def mesh(self):
        """Arrays ``X, Y`` of shape ``(nx, ny)``, indexed ``[i, j] -> (xs[i], ys[j])``."""
        return np.meshgrid(self.xs, self.ys, indexing="ij")

    def points(self):
        X, Y = self.mesh()
        return list(zip(X.ravel().tolist(), Y.ravel().tolist()))


@dataclass(frozen=True)
class CrReport:
    point: tuple
    r1: float          # u_x - v_y
    r2: float          # u_y - v_x
    satisfied: bool
    error: str = None  # error kind when the point could not be evaluated

    def to_json(self):
        out = {"point": [self.point[0], self.point[1]], "r1": self.r1, "r2": self.r2,
               "ok": self.satisfied}
        if self.error:
            out["error"] = self.error
        return out


def _report(pt, p, tol):
    r1 = p.ux - p.vy
    r2 = p.uy - p.vx
    return CrReport(pt, r1, r2, max(abs(r1), abs(r2)) <= tol)


def cr_check(field, grid, tol=1e-6):
    """One :class:`CrReport` per grid node.

    A node whose stencil leaves the field's domain gets a report with
    ``error="EvaluationDomain"`` and ``satisfied=False``; the sweep continues.
    """
    pts = grid.points() if isinstance(grid, RectGrid) else [tuple(map(float, p)) for p in grid]
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    h = np.array([default_step(p) for p in pts])
    try:
        vals, _ = _stencil_partials(field, xs, ys, 1, h, 2, 2)
    except EvaluationDomain:
        vals = None
    reports = []
    for k, pt in enumerate(pts):
        if vals is not None:
            ux, uy, vx, vy = (float(v[k]) for v in vals)
            reports.append(_report(pt, Partials(1, dict(ux=ux, uy=uy, vx=vx, vy=vy), 0.0), tol))
            continue
        try:
            reports.append(_report(pt, partials(field, pt), tol))
        except EvaluationDomain as exc:
            reports.append(CrReport(pt, math.nan, math.nan, False, exc.kind))
    return reports


def all_satisfied(reports):
    return bool(reports) and all(r.satisfied for r in reports)


def wave_residual(component, point, h=None):
    """``w_xx - w_yy`` for a real function ``w(x, y)`` at ``point``."""
    p = scalar_partials(component, point, order=2, h=h)
    return p.xx - p.yy


# ---------------------------------------------------------------------------
# (n, m)-angles
# ---------------------------------------------------------------------------

_SIGNS = {(2, 0): (1.0, 1.0), (1, 1): (1.0, -1.0), (0, 2): (-1.0, -1.0)}


def _signs(signature):
    try:
        return _SIGNS[tuple(signature)]
    except KeyError:
        raise InvalidInput(f"signature must be one of (2,0), (1,1), (0,2); got {signature}") from None


def q_form(a, b, signature):
    """The bilinear form of the signature applied to plane vectors ``a``, ``b``."""
    sx, sy = _signs(signature)
    return sx * a[0] * b[0] + sy * a[1] * b[1]


def _norm(a, signature):
    q = q_form(a, a, signature)
    scale = a[0] * a[0] + a[1] * a[1]
    if scale == 0.0 or abs(q) <= 1e-12 * scale:
        raise NullTangent(
            f"tangent ({a[0]:.6g}, {a[1]:.6g}) is null for signature {tuple(signature)}"
        )
    return math.sqrt(abs(q))


def q_angle(a, b, signature):
    """``q(a, b) / (sqrt|q(a, a)| sqrt|q(b, b)|)`` for tangent vectors ``a``, ``b``.

    The radicands keep their absolute value so that the sign of the form
    survives in the quotient.
    """
    return q_form(a, b, signature) / (_norm(a, signature) * _norm(b, signature))


def _tangent(curve, t):
    return (float(curve.dx(t)), float(curve.dy(t)))


def nm_angle(curve1, curve2, t1, t2, signature, tol=1e-9):
    """Angle between two curves at a common point under the given signature."""
    p1 = (float(curve1.x(t1)), float(curve1.y(t1)))
    p2 = (float(curve2.x(t2)), float(curve2.y(t2)))
    if math.hypot(p1[0] - p2[0], p1[1] - p2[1]) > tol * (1.0 + math.hypot(*p1)):
        raise InvalidInput(f"curves do not meet: {p1} vs {p2}")
    return q_angle(_tangent(curve1, t1), _tangent(curve2, t2), signature)


def _image_tangent(field, curve, t, h=1e-4):
    """d/dt of ``field(curve(t))`` by Richardson-extrapolated central differences."""
    steps = [h, h / 2, h / 4]
    ts = np.array([t + s * sgn for s in steps for sgn in (1.0, -1.0)])
    u, v = _eval(field, np.asarray(curve.x(ts), dtype=float), np.asarray(curve.y(ts), dtype=float))
    du = [(u[2 * k] - u[2 * k + 1]) / (2 * s) for k, s in enumerate(steps)]
    dv = [(v[2 * k] - v[2 * k + 1]) / (2 * s) for k, s in enumerate(steps)]
    return (float(_richardson(du, 2)[0]), float(_richardson(dv, 2)[0]))


class Conformality(NamedTuple):
    before: float
    after: float

    @property
    def change(self):
        return abs(self.after - self.before)


def conformality_probe(field, curve1, curve2, t1, t2, signature):
    """The (n,m)-angle of two curves before and after mapping them through ``field``."""
    before = nm_angle(curve1, curve2, t1, t2, signature)
    after = q_angle(_image_tangent(field, curve1, t1), _image_tangent(field, curve2, t2), signature)
    return Conformality(before, after)
