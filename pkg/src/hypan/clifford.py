"""Real Clifford algebras of up to six generators on a blade basis.

A blade is a bitmask over the generators (bit ``k`` set means generator
``k`` is a factor, factors kept in ascending order). A :class:`Multivector`
stores one coefficient per blade, densely.

The two-dimensional Minkowski algebra ``G2_HYP`` has generators ``e0``
(square ``-1``) and ``e1`` (square ``+1``); its pseudoscalar
``I = e0 e1`` squares to ``+1``. Hyperbolic numbers sit in it twice: as the
even part ``x + y I``, and as vectors through ``F(x + I y) = x e0 + y e1``.
Under ``F`` the vector derivative ``nabla = e0 d/dx + e1 d/dy`` vanishes
exactly on analytic fields, which :func:`hs_analytic_check` tests on grids.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .contour import principal_value
from .diffcalc import Field2, RectGrid, _eval, partials
from .errors import (
    GridTooSmall,
    InvalidInput,
    NotGradeOne,
    SignatureMismatch,
    ZeroArgument,
)
from .hypercore import HNumber

MAX_GENERATORS = 6


# ---------------------------------------------------------------------------
# signatures and tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Squares of the generators, in order, and their printable names."""

    squares: tuple
    names: tuple

    def __post_init__(self):
        if len(self.squares) != len(self.names):
            raise InvalidInput("one name per generator is required")
        if len(self.squares) > MAX_GENERATORS:
            raise InvalidInput(f"at most {MAX_GENERATORS} generators are supported")
        if any(s not in (1, -1) for s in self.squares):
            raise InvalidInput("generator squares must be +1 or -1")
        if len(set(self.names)) != len(self.names):
            raise InvalidInput("generator names must be distinct")
        for name in self.names:
            if not re.fullmatch(r"e\d+", name):
                raise InvalidInput(f"generator names look like e0, e1, ...; got {name!r}")

    @classmethod
    def pq(cls, p, q):
        """``p`` generators squaring to +1 followed by ``q`` squaring to -1, named e1, e2, ..."""
        if p < 0 or q < 0:
            raise InvalidInput("p and q must be nonnegative")
        if p + q > MAX_GENERATORS:
            raise InvalidInput(f"p + q must be at most {MAX_GENERATORS}")
        return cls((1,) * p + (-1,) * q, tuple(f"e{k + 1}" for k in range(p + q)))

    @property
    def n(self):
        return len(self.squares)

    @property
    def dim(self):
        return 1 << self.n

    @property
    def p(self):
        return sum(1 for s in self.squares if s > 0)

    @property
    def q(self):
        return sum(1 for s in self.squares if s < 0)

    @property
    def neg_mask(self):
        return sum(1 << k for k, s in enumerate(self.squares) if s < 0)

    def tables(self):
        """``(index, sign)`` with ``blade_i * blade_j = sign[i, j] * blade_{index[i, j]}``."""
        return _tables(self.n, self.neg_mask)

    def blade_name(self, mask):
        if mask == 0:
            return "1"
        return "^".join(self.names[k] for k in range(self.n) if mask >> k & 1)

    def __str__(self):
        return f"Cl({self.p},{self.q})[{','.join(self.names)}]"


@functools.lru_cache(maxsize=None)
def _tables(n, neg_mask):
    idx, sign = _kernels.cayley_table(n, neg_mask)
    idx.setflags(write=False)
    sign.setflags(write=False)
    return idx, sign


@functools.lru_cache(maxsize=None)
def _grades(n):
    g = np.array([bin(m).count("1") for m in range(1 << n)])
    g.setflags(write=False)
    return g


CL10 = Signature.pq(1, 0)
CL01 = Signature.pq(0, 1)
G2_HYP = Signature((-1, 1), ("e0", "e1"))


def parse_signature(text):
    """``"p,q"`` or ``"hyp"`` for the Minkowski plane algebra."""
    t = text.strip().lower()
    if t in ("hyp", "g2hyp", "g2_hyp"):
        return G2_HYP
    try:
        p, q = (int(v) for v in t.split(","))
    except ValueError:
        raise InvalidInput(f"signature must look like 'p,q' or 'hyp', got {text!r}") from None
    return Signature.pq(p, q)


# ---------------------------------------------------------------------------
# multivectors
# ---------------------------------------------------------------------------

class Multivector:
    """An immutable element of the Clifford algebra over ``sig``."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.shape != (sig.dim,):
            raise InvalidInput(f"expected {sig.dim} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def scalar(cls, sig, s):
        c = np.zeros(sig.dim)
        c[0] = s
        return cls(sig, c)

    @classmethod
    def blade(cls, sig, mask, coeff=1.0):
        if not 0 <= mask < sig.dim:
            raise InvalidInput(f"blade mask {mask} out of range for {sig}")
        c = np.zeros(sig.dim)
        c[mask] = coeff
        return cls(sig, c)

    @classmethod
    def generator(cls, sig, name):
        try:
            k = sig.names.index(name)
        except ValueError:
            raise InvalidInput(f"{sig} has no generator {name!r}") from None
        return cls.blade(sig, 1 << k)

    @classmethod
    def vector(cls, sig, components):
        c = np.zeros(sig.dim)
        for k, v in enumerate(components):
            c[1 << k] = v
        return cls(sig, c)

    @classmethod
    def parse(cls, sig, text):
        return parse_multivector(sig, text)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Multivector):
            return Multivector.scalar(self.sig, float(other))
        if other.sig != self.sig:
            raise SignatureMismatch(f"cannot combine {self.sig} with {other.sig}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Multivector(self.sig, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Multivector(self.sig, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Multivector(self.sig, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Multivector(self.sig, self.coeffs * other)
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Multivector(self.sig, self.coeffs * other)
        return geometric_product(self._check(other), self)

    def __xor__(self, other):
        return outer(self, other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.sig, self.coeffs.tobytes()))

    def allclose(self, other, atol=1e-12):
        other = self._check(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)

    def __getitem__(self, blade):
        """Coefficient of a blade given by mask or by name such as ``"e0^e1"``."""
        if isinstance(blade, str):
            blade = _blade_mask(self.sig, blade)
        return float(self.coeffs[blade])

    # -- grades -------------------------------------------------------------

    def grade(self, r):
        return grade(self, r)

    def grades(self):
        g = _grades(self.sig.n)
        return sorted({int(g[m]) for m in np.nonzero(self.coeffs)[0]})

    def reversion(self):
        return reversion(self)

    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector({self.sig}, {format_multivector(self)!r})"


def geometric_product(A, B):
    if A.sig != B.sig:
        raise SignatureMismatch(f"cannot multiply {A.sig} by {B.sig}")
    idx, sign = A.sig.tables()
    out = np.zeros(A.sig.dim)
    np.add.at(out, idx, sign * np.outer(A.coeffs, B.coeffs))
    return Multivector(A.sig, out)


def geometric_product_batch(sig, A, B):
    """Row-wise products of two ``(k, dim)`` coefficient arrays over ``sig``."""
    A = np.ascontiguousarray(A, dtype=float)
    B = np.ascontiguousarray(B, dtype=float)
    if A.ndim != 2 or A.shape != B.shape or A.shape[1] != sig.dim:
        raise InvalidInput(f"expected two arrays of shape (k, {sig.dim}), got {A.shape} and {B.shape}")
    idx, sign = sig.tables()
    return _kernels.gp_batch(A, B, idx, sign)


def _grade_sign(sig, fn):
    g = _grades(sig.n)
    return np.array([fn(int(r)) for r in g], dtype=float)


def grade(A, r):
    mask = _grades(A.sig.n) == r
    return Multivector(A.sig, np.where(mask, A.coeffs, 0.0))


def reversion(A):
    """Reverse the order of generators in every blade: sign ``(-1)**(r(r-1)/2)``."""
    return Multivector(A.sig, A.coeffs * _grade_sign(A.sig, lambda r: (-1) ** (r * (r - 1) // 2)))


def grade_involution(A):
    return Multivector(A.sig, A.coeffs * _grade_sign(A.sig, lambda r: (-1) ** r))


def clifford_conjugate(A):
    """Reversion composed with grade involution: sign ``(-1)**(r(r+1)/2)``."""
    return Multivector(A.sig, A.coeffs * _grade_sign(A.sig, lambda r: (-1) ** (r * (r + 1) // 2)))


def outer(A, B):
    """``sum_{r,s} <<A>_r <B>_s>_{r+s}``; on blades, the product when they share no generator."""
    if A.sig != B.sig:
        raise SignatureMismatch(f"cannot take outer product of {A.sig} and {B.sig}")
    idx, sign = A.sig.tables()
    m = np.arange(A.sig.dim)
    disjoint = (m[:, None] & m[None, :]) == 0
    out = np.zeros(A.sig.dim)
    np.add.at(out, idx, np.where(disjoint, sign * np.outer(A.coeffs, B.coeffs), 0.0))
    return Multivector(A.sig, out)


def scalar_product(A, B):
    """``<A B>_0``."""
    if A.sig != B.sig:
        raise SignatureMismatch(f"cannot take scalar product of {A.sig} and {B.sig}")
    _, sign = A.sig.tables()
    return float(np.sum(A.coeffs * B.coeffs * np.diag(sign)))


def magnitude(A):
    """``sqrt|<A^dagger A>_0|``."""
    return math.sqrt(abs(scalar_product(reversion(A), A)))


# ---------------------------------------------------------------------------
# text form:  3 + 2*e1 - 1*e0^e1
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<gen>e\d+)|(?P<op>[-+*^]))")


def _blade_mask(sig, text):
    return _parse_blade(sig, [g.strip() for g in text.split("^")])[0]


def _parse_blade(sig, names):
    """Mask and sign of the outer product of the named generators."""
    result = Multivector.scalar(sig, 1.0)
    for name in names:
        result = outer(result, Multivector.generator(sig, name))
    nz = np.nonzero(result.coeffs)[0]
    if nz.size == 0:
        return 0, 0.0
    return int(nz[0]), float(result.coeffs[nz[0]])


def parse_multivector(sig, text):
    """Parse sums of terms ``c``, ``c*blade`` or ``blade`` with blades like ``e0^e1``."""
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidInput(f"unexpected character {text[pos:].strip()[:1]!r} in multivector {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    out = np.zeros(sig.dim)
    k = 0
    expect_term = True
    if not tokens:
        raise InvalidInput("empty multivector")
    while k < len(tokens):
        sign = 1.0
        while k < len(tokens) and tokens[k] in (("op", "+"), ("op", "-")):
            sign *= -1.0 if tokens[k][1] == "-" else 1.0
            k += 1
        coeff = 1.0
        if k < len(tokens) and tokens[k][0] == "num":
            coeff = float(tokens[k][1])
            k += 1
            if k < len(tokens) and tokens[k] == ("op", "*"):
                k += 1
                if k >= len(tokens) or tokens[k][0] != "gen":
                    raise InvalidInput(f"expected a generator after '*' in {text!r}")
            elif k < len(tokens) and tokens[k][0] == "gen":
                raise InvalidInput(f"write coefficients as c*blade in {text!r}")
        elif k >= len(tokens) or tokens[k][0] != "gen":
            raise InvalidInput(f"expected a number or generator in {text!r}")
        names = []
        if k < len(tokens) and tokens[k][0] == "gen":
            names.append(tokens[k][1])
            k += 1
            while k < len(tokens) and tokens[k] == ("op", "^"):
                k += 1
                if k >= len(tokens) or tokens[k][0] != "gen":
                    raise InvalidInput(f"expected a generator after '^' in {text!r}")
                names.append(tokens[k][1])
                k += 1
        mask, bsign = _parse_blade(sig, names)
        out[mask] += sign * coeff * bsign
        expect_term = False
        if k < len(tokens) and tokens[k] not in (("op", "+"), ("op", "-")):
            raise InvalidInput(f"unexpected {tokens[k][1]!r} in multivector {text!r}")
    if expect_term:
        raise InvalidInput(f"no terms in multivector {text!r}")
    return Multivector(sig, out)


def _fmt(x):
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def format_multivector(A):
    g = _grades(A.sig.n)
    order = sorted(range(A.sig.dim), key=lambda m: (g[m], m))
    parts = []
    for m in order:
        c = float(A.coeffs[m])
        if c == 0.0:
            continue
        body = _fmt(abs(c)) if m == 0 else f"{_fmt(abs(c))}*{A.sig.blade_name(m)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Pauli-matrix representations of the two-dimensional algebras
# ---------------------------------------------------------------------------

SIGMA0 = np.eye(2)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])
I_SIGMA2 = np.array([[0.0, 1.0], [-1.0, 0.0]])   # i * sigma_2, a real matrix


def pauli_iso(sig, z):
    """Matrix of ``x1 + x2 e1`` in Cl(1,0) (``x1 s0 + x2 s1``) or Cl(0,1) (``x1 s0 + x2 i s2``)."""
    x1, x2 = float(z[0]), float(z[1])
    if sig == CL10:
        return x1 * SIGMA0 + x2 * SIGMA1
    if sig == CL01:
        return x1 * SIGMA0 + x2 * I_SIGMA2
    raise InvalidInput("Pauli representations exist here for Cl(1,0) and Cl(0,1) only")


def pauli_check(z1, z2, sig, rtol=1e-14):
    """Whether the matrix product of the images equals the image of the product."""
    a = Multivector(sig, [z1[0], z1[1]])
    b = Multivector(sig, [z2[0], z2[1]])
    ab = a * b
    lhs = pauli_iso(sig, z1) @ pauli_iso(sig, z2)
    rhs = pauli_iso(sig, (ab.coeffs[0], ab.coeffs[1]))
    scale = max(1.0, float(np.max(np.abs(lhs))))
    return bool(np.max(np.abs(lhs - rhs)) <= rtol * scale)


# ---------------------------------------------------------------------------
# hyperbolic numbers inside the algebras
# ---------------------------------------------------------------------------

E0 = Multivector.generator(G2_HYP, "e0")
E1 = Multivector.generator(G2_HYP, "e1")
PSEUDOSCALAR = E0 * E1


def embed_cl10(z):
    """``x + y i  ->  x + y e1`` in Cl(1,0)."""
    return Multivector(CL10, [z.re, z.im])


def embed_g2hyp(z):
    """``x + y i  ->  x + y I`` in G2_HYP."""
    return Multivector.scalar(G2_HYP, z.re) + PSEUDOSCALAR * float(z.im)


def from_even(A):
    """Inverse of :func:`embed_g2hyp`; rejects odd parts."""
    if A.sig != G2_HYP or A.coeffs[1] or A.coeffs[2]:
        raise InvalidInput("expected an even G2_HYP element")
    return HNumber(float(A.coeffs[0]), float(A.coeffs[3]))


def f_map(z):
    """``F(x + I y) = (x + I y) e0 = x e0 + y e1``."""
    return Multivector(G2_HYP, [0.0, z.re, z.im, 0.0])


def f_inverse(v):
    """``F^-1(v) = -v e0`` for a pure vector ``v``."""
    if v.sig != G2_HYP:
        raise SignatureMismatch(f"expected a G2_HYP vector, got {v.sig}")
    if v.coeffs[0] or v.coeffs[3]:
        raise NotGradeOne(f"{v} is not a pure vector")
    return from_even(-(v * E0))


# ---------------------------------------------------------------------------
# first-order operators on sampled fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampledField:
    """Multivector values on the nodes of a uniform grid, shape ``(nx, ny, dim)``."""

    grid: RectGrid
    sig: Signature
    values: np.ndarray

    def __post_init__(self):
        shape = (self.grid.nx, self.grid.ny, self.sig.dim)
        if self.values.shape != shape:
            raise InvalidInput(f"values must have shape {shape}, got {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise InvalidInput("sampled values must be finite")

    @classmethod
    def from_field(cls, f: Field2, grid: RectGrid):
        """``F[f] = u e0 + v e1`` sampled on the grid (G2_HYP)."""
        X, Y = grid.mesh()
        u, v = _eval(f, X, Y)
        values = np.zeros((grid.nx, grid.ny, 4))
        values[..., 1] = u
        values[..., 2] = v
        return cls(grid, G2_HYP, values)

    def at(self, i, j):
        return Multivector(self.sig, self.values[i, j])

    def norms(self):
        return np.sqrt(np.sum(self.values ** 2, axis=-1))


OPERATOR_KINDS = ("dirac", "dirac_adjoint", "cauchy_fueter", "cauchy_fueter_adjoint")


def _left_blade(mask, sig, arr):
    """``blade * arr`` for arrays of coefficient vectors."""
    idx, sign = sig.tables()
    out = np.zeros_like(arr)
    out[..., idx[mask]] = sign[mask] * arr
    return out


def dirac_apply(field: SampledField, kind="dirac"):
    """Apply a first-order operator by central differences on interior nodes.

    With ``a, b`` the first two generators:

    * ``dirac``: ``a d/dx + b d/dy``
    * ``dirac_adjoint``: conjugated generators, i.e. ``-(a d/dx + b d/dy)``
    * ``cauchy_fueter``: ``d/dx + a d/dy`` (x plays the scalar direction)
    * ``cauchy_fueter_adjoint``: ``d/dx - a d/dy``

    For G2_HYP ``dirac`` is ``nabla = e0 d/dx + e1 d/dy``.
    """
    g, sig = field.grid, field.sig
    if g.nx < 3 or g.ny < 3:
        raise GridTooSmall(f"need at least 3 nodes per axis, got {g.nx} x {g.ny}")
    if kind not in OPERATOR_KINDS:
        raise InvalidInput(f"kind must be one of {OPERATOR_KINDS}, got {kind!r}")
    need = 2 if kind.startswith("dirac") else 1
    if sig.n < need:
        raise InvalidInput(f"{kind} needs at least {need} generators in {sig}")
    vals = np.ascontiguousarray(field.values, dtype=float)
    dx, dy = _kernels.grid_diff(vals, g.hx, g.hy)
    if kind == "dirac":
        out = _left_blade(1, sig, dx) + _left_blade(2, sig, dy)
    elif kind == "dirac_adjoint":
        out = -(_left_blade(1, sig, dx) + _left_blade(2, sig, dy))
    elif kind == "cauchy_fueter":
        out = dx + _left_blade(1, sig, dy)
    else:
        out = dx - _left_blade(1, sig, dy)
    inner = RectGrid(g.x0 + g.hx, g.x1 - g.hx, g.y0 + g.hy, g.y1 - g.hy, g.nx - 2, g.ny - 2)
    return SampledField(inner, sig, out)


def hs_analytic_map(f: Field2, grid: RectGrid):
    """``nabla F[f]`` on the interior nodes of ``grid``."""
    return dirac_apply(SampledField.from_field(f, grid), "dirac")


def hs_analytic_nodes(f: Field2, grid: RectGrid, tol=1e-6):
    """Boolean ``(nx-2, ny-2)`` array: where ``||nabla F[f]|| < tol``."""
    return hs_analytic_map(f, grid).norms() < tol


def hs_analytic_check(f: Field2, grid: RectGrid, tol=1e-6):
    return bool(np.all(hs_analytic_nodes(f, grid, tol)))


# ---------------------------------------------------------------------------
# sphere areas, the kernel e(x), and Green-kernel fluxes
# ---------------------------------------------------------------------------

def half_gamma(n):
    """``Gamma(n/2)`` for a positive integer ``n`` by the recursion ``Gamma(x+1) = x Gamma(x)``."""
    if n < 1:
        raise InvalidInput("n must be a positive integer")
    x, g = (1.0, 1.0) if n % 2 == 0 else (0.5, math.sqrt(math.pi))
    while x < n / 2:
        g *= x
        x += 1.0
    return g


def sigma_n(n):
    """Area of the unit sphere in ``R^n``: ``2 pi**(n/2) / Gamma(n/2)``."""
    return 2.0 * math.pi ** (n / 2) / half_gamma(n)


def kernel_e(x, n=None):
    """``-x / (sigma_n |x|**n)``."""
    x = np.asarray(x, dtype=float)
    n = x.size if n is None else n
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise ZeroArgument("kernel_e is singular at the origin")
    return -x / (sigma_n(n) * r ** n)


def green_flux(center, radius, samples=720):
    """Outward flux of ``(r - r0)/|r - r0|**2`` through a circle around ``r0``.

    Periodic trapezoid rule; the exact value is ``2 pi`` for every radius.
    """
    if not radius > 0:
        raise InvalidInput("radius must be positive")
    th = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    nx, ny = np.cos(th), np.sin(th)
    dx, dy = radius * nx, radius * ny
    r2 = dx * dx + dy * dy
    flux_density = (dx * nx + dy * ny) / r2
    return float(np.sum(flux_density) * radius * (2 * np.pi / samples))


def euclidean_kernel(x, y, center):
    dx, dy = x - center[0], y - center[1]
    r2 = dx * dx + dy * dy
    return dx / r2, dy / r2


def hyperbolic_kernel(x, y, center):
    """Components of ``F[1/(z - z0)] = u e0 + v e1``."""
    dx, dy = x - center[0], y - center[1]
    q = dx * dx - dy * dy
    return dx / q, -dy / q


def kernel_nabla(kind, point, center):
    """``nabla`` of the Euclidean or hyperbolic Cauchy kernel at ``point``.

    Returns the ``(scalar, bivector)`` parts. With ``K = u a + v b`` for the
    two generators ``a, b``, ``nabla K = a^2 u_x + b^2 v_y + (v_x - u_y) ab``;
    the Euclidean plane has ``a^2 = b^2 = 1``, G2_HYP has ``a^2 = -1``.
    """
    if kind not in ("euclidean", "hyperbolic"):
        raise InvalidInput("kind must be 'euclidean' or 'hyperbolic'")
    fn = euclidean_kernel if kind == "euclidean" else hyperbolic_kernel
    p = partials(Field2(lambda x, y: fn(x, y, center)[0], lambda x, y: fn(x, y, center)[1]), point)
    a2 = 1.0 if kind == "euclidean" else -1.0
    return a2 * p.ux + p.vy, p.vx - p.uy


def hyperbolic_kernel_flux(center, radius, tol=1e-10):
    """Directed flux ``oint N F ds`` of ``F[1/(z - z0)]`` on a circle, ``N = n_x e0 + n_y e1``.

    The integrand is singular where the circle crosses the diagonals through
    ``z0``, so both parts are principal values. Returns ``(scalar, bivector)``.
    """
    cx, cy = center

    def g(t):
        nx, ny = np.cos(t), np.sin(t)
        u, v = hyperbolic_kernel(cx + radius * nx, cy + radius * ny, center)
        # N F = -n_x u + n_y v + (n_x v - n_y u) I, with e0 e0 = -1
        return np.vstack([(-nx * u + ny * v) * radius, (nx * v - ny * u) * radius])

    sing = [math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4]
    value, _, _ = principal_value(g, 0.0, 2 * math.pi, sing, ncomp=2, tol=tol)
    return float(value[0]), float(value[1])
