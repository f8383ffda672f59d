"""Square roots and quadratic equations on the hyperbolic numbers.

In idempotent coordinates ``p = re + im``, ``m = re - im`` squaring acts
componentwise, so ``z`` has a square root iff ``p >= 0`` and ``m >= 0`` and
the roots are ``(+-sqrt p, +-sqrt m)``: four in general, two when exactly
one coordinate vanishes, one for ``z = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BranchUnavailable, InvalidInput, NotInvertible
from .hypercore import HNumber, IdempotentPair, div, euclid_norm, on_diagonal

# sheet -> (sign on e+, sign on e-); on positive reals the sheets give
# R+, R-, iR+ and iR- respectively
SHEETS = {1: (1, 1), 2: (-1, -1), 3: (1, -1), 4: (-1, 1)}
ZERO_RTOL = 1e-14
DEDUP_RTOL = 1e-10


@dataclass(frozen=True)
class RootSet:
    roots: tuple = ()
    branch_labels: tuple = ()
    degenerate: bool = False

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def to_json(self):
        return {
            "roots": [r.to_json() for r in self.roots],
            "branches": [list(b) for b in self.branch_labels],
            "degenerate": self.degenerate,
        }


def _snap(p, m, rtol):
    scale = max(abs(p), abs(m))
    if abs(p) <= rtol * scale:
        p = 0.0
    if abs(m) <= rtol * scale:
        m = 0.0
    return p, m


def _root(sp, sm, rp, rm):
    return IdempotentPair(sp * rp, sm * rm).to_h()


def sqrt_all(z, zero_rtol=ZERO_RTOL):
    """Every square root of ``z``, labelled by its idempotent sign pair."""
    pair = IdempotentPair.from_h(HNumber(float(z.re), float(z.im)))
    p, m = _snap(pair.plus, pair.minus, zero_rtol)
    if p < 0 or m < 0:
        return RootSet()
    rp, rm = math.sqrt(p), math.sqrt(m)
    roots, labels = [], []
    for sp, sm in SHEETS.values():
        # with a zero coordinate its sign is immaterial; keep the first label
        if (rp == 0 and sp < 0) or (rm == 0 and sm < 0):
            continue
        roots.append(_root(sp, sm, rp, rm))
        labels.append((sp, sm))
    return RootSet(tuple(roots), tuple(labels), degenerate=len(roots) == 2)


def sqrt_branch(z, sheet):
    """The square root of ``z`` on the given sheet (1 to 4).

    Array components are accepted; every element must have four roots.
    """
    if sheet not in SHEETS:
        raise InvalidInput(f"sheet must be 1, 2, 3 or 4, got {sheet}")
    sp, sm = SHEETS[sheet]
    p = np.asarray(z.re, dtype=float) + np.asarray(z.im, dtype=float)
    m = np.asarray(z.re, dtype=float) - np.asarray(z.im, dtype=float)
    if not (np.all(p > 0) and np.all(m > 0)):
        raise BranchUnavailable(
            "branch square roots need both idempotent coordinates positive "
            f"(re + im = {_show(p)}, re - im = {_show(m)})"
        )
    a, b = sp * np.sqrt(p), sm * np.sqrt(m)
    re, im = (a + b) / 2, (a - b) / 2
    if np.ndim(re) == 0:
        return HNumber(float(re), float(im))
    return HNumber(re, im)


def _show(x):
    return f"{float(x):.6g}" if np.ndim(x) == 0 else "array"


def _dedupe(roots, labels, rtol):
    out, out_labels = [], []
    for r, lab in zip(roots, labels):
        if any(euclid_norm(r - q) <= rtol * (1.0 + euclid_norm(q)) for q in out):
            continue
        out.append(r)
        out_labels.append(lab)
    return out, out_labels


def quadratic_solve(a, b, c, dedup_rtol=DEDUP_RTOL):
    """Solutions of ``a z**2 + b z + c = 0`` as ``(-b + r) / (2a)`` over the
    square roots ``r`` of ``b**2 - 4ac``.

    The ``+-`` of the textbook formula is already covered because the roots
    of the discriminant come in negated pairs.
    """
    if on_diagonal(a):
        raise NotInvertible(f"leading coefficient {a} is not invertible")
    delta = b * b - 4.0 * (a * c)
    # cancellation in b*b - 4ac leaves noise of the order of the operands
    scale = max(euclid_norm(b * b), euclid_norm(4.0 * (a * c)))
    pair = IdempotentPair.from_h(delta)
    p, m = pair.plus, pair.minus
    if abs(p) <= 1e-13 * scale:
        p = 0.0
    if abs(m) <= 1e-13 * scale:
        m = 0.0
    droots = sqrt_all(IdempotentPair(p, m).to_h(), zero_rtol=0.0)
    two_a = 2.0 * a
    sols = [div(r - b, two_a) for r in droots.roots]
    sols, labels = _dedupe(sols, droots.branch_labels, dedup_rtol)
    return RootSet(tuple(sols), tuple(labels), degenerate=len(sols) == 2)


def residual(coeffs, z):
    a, b, c = coeffs
    return euclid_norm(a * z * z + b * z + c)


class NoGoWitness(NamedTuple):
    coefficients: tuple   # two (a, b, c) triples
    too_many: RootSet     # more roots than the degree
    none: RootSet         # no roots at all


def no_go_witness():
    """Two monic quadratics that break unique factorisation over the ring."""
    one, zero = HNumber(1.0, 0.0), HNumber(0.0, 0.0)
    many = (one, zero, HNumber(-1.0, 0.0))
    empty = (one, zero, one)
    return NoGoWitness((many, empty), quadratic_solve(*many), quadratic_solve(*empty))
