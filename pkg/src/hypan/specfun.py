"""exp, cosh and sinh on the hyperbolic numbers, summed from their power series."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidInput, MaxTermsExceeded
from .hypercore import HNumber, euclid_norm, mul


@dataclass(frozen=True)
class SeriesConfig:
    """Termination rule for the series.

    Summation stops at the first term whose Euclidean norm drops below
    ``tol``. Arguments with norm above ``scale_threshold`` are halved
    repeatedly before summing and the result is squared back up.
    """

    tol: float = 1e-15
    max_terms: int = 256
    scale_threshold: float = 20.0

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidInput(f"tol must be positive, got {self.tol}")
        if self.max_terms < 8:
            raise InvalidInput(f"max_terms must be at least 8, got {self.max_terms}")


DEFAULT = SeriesConfig()


def _sum(z, cfg, parity):
    re = np.atleast_1d(np.asarray(z.re, dtype=float)).ravel()
    im = np.atleast_1d(np.asarray(z.im, dtype=float)).ravel()
    re, im = np.broadcast_arrays(re, im)
    out_re, out_im, used = _kernels.series_sum(
        np.ascontiguousarray(re), np.ascontiguousarray(im), cfg.tol, cfg.max_terms, parity
    )
    if used < 0:
        raise MaxTermsExceeded(
            f"series did not reach tol={cfg.tol:g} within {cfg.max_terms} terms"
        )
    shape = np.broadcast(np.asarray(z.re), np.asarray(z.im)).shape
    if shape == ():
        return HNumber(float(out_re[0]), float(out_im[0]))
    return HNumber(out_re.reshape(shape), out_im.reshape(shape))


def _halvings(z, cfg):
    norm = np.max(euclid_norm(z))
    if not norm > cfg.scale_threshold:
        return 0
    return max(0, math.ceil(math.log2(norm / cfg.scale_threshold)))


def exp(z, cfg=None):
    """exp(z) = sum z**n / n!."""
    cfg = cfg or DEFAULT
    z = z if isinstance(z, HNumber) else HNumber(z, 0.0)
    k = _halvings(z, cfg)
    if k == 0:
        return _sum(z, cfg, _kernels.ALL_TERMS)
    scale = 2.0 ** -k
    w = _sum(HNumber(z.re * scale, z.im * scale), cfg, _kernels.ALL_TERMS)
    for _ in range(k):
        w = mul(w, w)
    return w


def cosh(z, cfg=None):
    """cosh(z) = sum z**(2n) / (2n)!."""
    cfg = cfg or DEFAULT
    z = z if isinstance(z, HNumber) else HNumber(z, 0.0)
    if _halvings(z, cfg):
        e1, e2 = exp(z, cfg), exp(-z, cfg)
        return HNumber((e1.re + e2.re) / 2, (e1.im + e2.im) / 2)
    return _sum(z, cfg, _kernels.EVEN_TERMS)


def sinh(z, cfg=None):
    """sinh(z) = sum z**(2n+1) / (2n+1)!."""
    cfg = cfg or DEFAULT
    z = z if isinstance(z, HNumber) else HNumber(z, 0.0)
    if _halvings(z, cfg):
        e1, e2 = exp(z, cfg), exp(-z, cfg)
        return HNumber((e1.re - e2.re) / 2, (e1.im - e2.im) / 2)
    return _sum(z, cfg, _kernels.ODD_TERMS)


def euler(theta):
    """Right-hand side of the hyperbolic Euler formula, cosh(t) + i sinh(t)."""
    if isinstance(theta, np.ndarray):
        return HNumber(np.cosh(theta), np.sinh(theta))
    return HNumber(math.cosh(theta), math.sinh(theta))
