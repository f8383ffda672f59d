"""The ring of hyperbolic (split-complex) numbers ``a + i b`` with ``i**2 = +1``.

:class:`HNumber` components may be Python floats or numpy arrays of a common
shape; all arithmetic is written so that it broadcasts, which lets the same
code evaluate a field at one point or on a whole lattice.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInput, NotInvertible, OnDiagonal

DIAGONAL_RTOL = 1e-12


def _as_h(x):
    if isinstance(x, HNumber):
        return x
    if isinstance(x, (int, float, np.floating, np.integer, np.ndarray)):
        return HNumber(x, 0.0 * np.asarray(x) if isinstance(x, np.ndarray) else 0.0)
    return NotImplemented


@dataclass(frozen=True, eq=True)
class HNumber:
    """``re + i*im`` with ``i*i = 1``."""

    re: float
    im: float = 0.0

    def __add__(self, other):
        other = _as_h(other)
        if other is NotImplemented:
            return other
        return HNumber(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_h(other)
        if other is NotImplemented:
            return other
        return HNumber(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_h(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return HNumber(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _as_h(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_h(other)
        if other is NotImplemented:
            return other
        return div(self, other)

    def __rtruediv__(self, other):
        other = _as_h(other)
        if other is NotImplemented:
            return other
        return div(other, self)

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)):
            raise InvalidInput("only integer powers are defined on the hyperbolic numbers")
        return power(self, int(n))

    def __abs__(self):
        return euclid_norm(self)

    def conj(self):
        return conj(self)

    def __str__(self):
        return format_hnumber(self)

    def to_json(self):
        return {"re": float(self.re), "im": float(self.im)}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(float(obj["re"]), float(obj["im"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad HNumber JSON {obj!r}") from exc

    @classmethod
    def parse(cls, text):
        return parse_hnumber(text)


I = HNumber(0.0, 1.0)
ONE = HNumber(1.0, 0.0)
ZERO = HNumber(0.0, 0.0)


@dataclass(frozen=True)
class IdempotentPair:
    """Coordinates in the basis e+ = (1+i)/2, e- = (1-i)/2.

    Multiplication is componentwise in these coordinates.
    """

    plus: float
    minus: float

    @classmethod
    def from_h(cls, z):
        return cls(z.re + z.im, z.re - z.im)

    def to_h(self):
        return HNumber((self.plus + self.minus) / 2, (self.plus - self.minus) / 2)

    def __mul__(self, other):
        return IdempotentPair(self.plus * other.plus, self.minus * other.minus)


class Quadrant(str, enum.Enum):
    H1 = "H1"
    H2 = "H2"
    H3 = "H3"
    H4 = "H4"
    DIAGONAL = "Diagonal"


class ExpRepresentation(NamedTuple):
    r: float
    theta: float
    prefactor: HNumber

    def reconstruct(self):
        from .specfun import exp

        return self.prefactor * (exp(HNumber(0.0, self.theta)) * self.r)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def mul(z1, z2):
    a, b = z1.re, z1.im
    c, d = z2.re, z2.im
    return HNumber(a * c + b * d, a * d + b * c)


def conj(z):
    return HNumber(z.re, -z.im)


def modulus_sq(z):
    """The Minkowski form ``z * conj(z) = re**2 - im**2`` (may be negative)."""
    return z.re * z.re - z.im * z.im


def euclid_norm(z):
    return np.hypot(z.re, z.im) if isinstance(z.re, np.ndarray) else math.hypot(z.re, z.im)


def sobczyk_modulus(z):
    q = modulus_sq(z)
    return np.sqrt(np.abs(q)) if isinstance(q, np.ndarray) else math.sqrt(abs(q))


def on_diagonal(z, rtol=DIAGONAL_RTOL):
    """True where ``|re| == |im|`` up to ``rtol * max(|re|, |im|)``.

    Exact equality (including zero) always counts as diagonal.
    """
    ar, ai = np.abs(z.re), np.abs(z.im)
    return np.abs(ar - ai) <= rtol * np.maximum(ar, ai)


def div(z1, z2):
    diag = on_diagonal(z2)
    if np.any(diag):
        raise NotInvertible(f"{_short(z2)} lies on a diagonal (zero divisor) and has no inverse")
    # componentwise in idempotent coordinates; avoids re**2 - im**2 underflowing
    p1, m1 = z1.re + z1.im, z1.re - z1.im
    p2, m2 = z2.re + z2.im, z2.re - z2.im
    p, m = p1 / p2, m1 / m2
    return HNumber((p + m) / 2, (p - m) / 2)


def inverse(z):
    return div(ONE, z)


def power(z, n):
    if n < 0:
        return power(inverse(z), -n)
    result = HNumber(1.0 + 0.0 * z.re, 0.0 * z.im)
    base = z
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


# ---------------------------------------------------------------------------
# geometry of the plane
# ---------------------------------------------------------------------------

def quadrant(z):
    x, y = float(z.re), float(z.im)
    if on_diagonal(HNumber(x, y)):
        return Quadrant.DIAGONAL
    if abs(y) < x:
        return Quadrant.H1
    if abs(x) < y:
        return Quadrant.H2
    if abs(y) < -x:
        return Quadrant.H3
    return Quadrant.H4


def hyp_argument(z):
    q = quadrant(z)
    if q is Quadrant.DIAGONAL:
        raise OnDiagonal(f"hyperbolic argument undefined on the diagonals ({_short(z)})")
    if q in (Quadrant.H1, Quadrant.H3):
        return math.atanh(z.im / z.re)
    return math.atanh(z.re / z.im)


_PREFACTORS = {
    Quadrant.H1: ONE,
    Quadrant.H2: I,
    Quadrant.H3: -ONE,
    Quadrant.H4: -I,
}


def exp_representation(z):
    """Return ``(r, theta, prefactor)`` with ``z = prefactor * r * exp(i theta)``."""
    q = quadrant(z)
    if q is Quadrant.DIAGONAL:
        raise OnDiagonal(f"no exponential representation on the diagonals ({_short(z)})")
    return ExpRepresentation(sobczyk_modulus(z), hyp_argument(z), _PREFACTORS[q])


def complex_transform(z):
    """Map ``x + i y`` to the ordinary complex number ``x + j y``."""
    return complex(z.re, z.im)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

_REAL_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def _real(text, whole):
    if not _REAL_RE.fullmatch(text):
        raise InvalidInput(f"cannot parse hyperbolic number {whole!r}")
    return float(text)


def _fmt_real(x):
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def format_hnumber(z):
    """``a+bi`` using shortest round-trip decimals, e.g. ``3.5-2i``."""
    re_s = _fmt_real(z.re)
    im_s = _fmt_real(z.im)
    if im_s.startswith("-"):
        return f"{re_s}-{im_s[1:]}i"
    return f"{re_s}+{im_s}i"


def parse_hnumber(text):
    """Parse ``a+bi``, ``a-bi``, ``bi``, ``i``, ``-i`` or a plain real."""
    t = "".join(str(text).split())
    if not t:
        raise InvalidInput("empty hyperbolic number")
    if not t.endswith("i"):
        return HNumber(_real(t, text), 0.0)
    body = t[:-1].rstrip("*")
    split = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            split = k
            break
    re_text, im_text = ("", body) if split is None else (body[:split], body[split:])
    re_part = _real(re_text, text) if re_text else 0.0
    if im_text in ("", "+"):
        im_part = 1.0
    elif im_text == "-":
        im_part = -1.0
    else:
        im_part = _real(im_text, text)
    return HNumber(re_part, im_part)


def _short(z):
    if isinstance(z.re, np.ndarray):
        return "array argument"
    return format_hnumber(z)
