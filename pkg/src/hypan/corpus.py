"""Standard fields, curves and grids shared by the check suite, the CLI and the tests."""
from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .contour import Curve
from .diffcalc import Field2, RectGrid
from .errors import InvalidInput
from .expr import field_from_expr
from .hypercore import HNumber


class CorpusField(NamedTuple):
    name: str
    field: Field2
    analytic: bool


def complex_square():
    """``u = x^2 - y^2, v = 2xy``: the complex square read as a map of the hyperbolic plane."""
    return Field2(lambda x, y: x * x - y * y, lambda x, y: 2 * x * y, name="complex-square")


def analyticity_corpus():
    """Three hyperbolic-analytic fields followed by three that are not."""
    return [
        CorpusField("z^2", field_from_expr("z^2"), True),
        CorpusField("exp(z)", field_from_expr("exp(z)"), True),
        CorpusField("1/z", field_from_expr("1/z"), True),
        CorpusField("conj(z)", field_from_expr("conj(z)"), False),
        CorpusField("z*conj(z)", field_from_expr("z*conj(z)"), False),
        CorpusField("complex-square", complex_square(), False),
    ]


# a square grid inside the right quadrant, clear of the diagonals
ANALYSIS_GRID = RectGrid(1.0, 2.0, -0.5, 0.5, 11, 11)

QUARTER_PI_ODD = (math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4)


def ellipse21():
    return Curve.ellipse(2.0, 1.0)


def shifted_ellipse():
    return Curve.ellipse(1.0, 0.5, center=(4.0, 2.0))


def unit_circle_pv():
    """Unit circle with the four points where it meets the diagonals marked singular."""
    return Curve.unit_circle(singular_ts=QUARTER_PI_ODD)


def hyperbola_right():
    return Curve.hyperbola_branch(1)


def hyperbola_left():
    return Curve.hyperbola_branch(-1)


def _trig_closed_curve(rng, modes=3, amplitude=0.4):
    """A smooth closed curve: unit-scale ellipse plus small random harmonics."""
    cx, cy = rng.uniform(-1.0, 1.0, 2)
    a, b = rng.uniform(0.8, 1.6, 2)
    ax, bx, ay, by = (amplitude * rng.uniform(-1.0, 1.0, modes) / np.arange(2, modes + 2) ** 2
                      for _ in range(4))
    k = np.arange(2, modes + 2)

    def x(t):
        t = np.asarray(t, dtype=float)[..., None]
        return cx + a * np.cos(t[..., 0]) + np.sum(ax * np.cos(k * t) + bx * np.sin(k * t), axis=-1)

    def y(t):
        t = np.asarray(t, dtype=float)[..., None]
        return cy + b * np.sin(t[..., 0]) + np.sum(ay * np.cos(k * t) + by * np.sin(k * t), axis=-1)

    def dx(t):
        t = np.asarray(t, dtype=float)[..., None]
        return -a * np.sin(t[..., 0]) + np.sum(k * (bx * np.cos(k * t) - ax * np.sin(k * t)), axis=-1)

    def dy(t):
        t = np.asarray(t, dtype=float)[..., None]
        return b * np.cos(t[..., 0]) + np.sum(k * (by * np.cos(k * t) - ay * np.sin(k * t)), axis=-1)

    return Curve(x, y, 0.0, 2 * math.pi, dx=dx, dy=dy, closed=True, name="random closed curve")


def polynomial_field(coeffs):
    """``sum coeffs[k] z^k`` by Horner's rule."""
    coeffs = [HNumber(float(c.re), float(c.im)) for c in coeffs]

    def f(z):
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = acc * z + c
        return acc

    return Field2.from_hyperbolic(f, name=f"polynomial of degree {len(coeffs) - 1}")


def goursat_corpus(seed=7, n_curves=5):
    """``(label, field, closed curve)`` triples with entire fields.

    Fields: ``z^2``, ``exp z`` and one random polynomial of each degree 1 to 4;
    curves: ``n_curves`` random smooth closed curves. Every closed integral
    vanishes, so the set doubles as the corpus for the M*L bound.
    """
    rng = np.random.default_rng(seed)
    fields = [("z^2", field_from_expr("z^2")), ("exp(z)", field_from_expr("exp(z)"))]
    for deg in range(1, 5):
        cs = [HNumber(*rng.uniform(-1.0, 1.0, 2)) for _ in range(deg + 1)]
        fields.append((f"poly{deg}", polynomial_field(cs)))
    curves = [_trig_closed_curve(rng) for _ in range(n_curves)]
    return [(f"{name} on curve {k}", f, c) for name, f in fields for k, c in enumerate(curves)]


# ---------------------------------------------------------------------------
# JSON fixtures
# ---------------------------------------------------------------------------

def fixture_names():
    return sorted(p.name for p in resources.files("hypan").joinpath("fixtures").iterdir()
                  if p.name.endswith(".json"))


def load_json(name_or_path):
    """Read a JSON file, falling back to the bundled fixtures by file name."""
    path = Path(name_or_path)
    if path.is_file():
        text = path.read_text()
    else:
        res = resources.files("hypan").joinpath("fixtures").joinpath(path.name)
        if not res.is_file():
            raise InvalidInput(f"no such file or bundled fixture: {name_or_path}")
        text = res.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{name_or_path}: invalid JSON ({exc})") from exc


def load_curve(name_or_path):
    return Curve.from_json(load_json(name_or_path))
