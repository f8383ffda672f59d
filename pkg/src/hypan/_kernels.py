"""Numeric inner loops, each in two flavours.

``*_loop`` functions are written element-by-element and compiled with numba
when it is available; ``*_numpy`` functions are vectorised equivalents. The
unsuffixed public names point at one or the other according to
:data:`hypan._accel.USE_NUMBA`. Both flavours perform the same floating-point
operations in the same order, so they agree bit-for-bit on the series and
product kernels.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

# series parity selector
ALL_TERMS, EVEN_TERMS, ODD_TERMS = 0, 1, 2


# ---------------------------------------------------------------------------
# power series  sum_n c_n z^n / n!  on split-complex arrays
# ---------------------------------------------------------------------------

@njit
def series_sum_loop(re, im, tol, max_terms, parity):
    n_el = re.shape[0]
    out_re = np.empty(n_el)
    out_im = np.empty(n_el)
    worst = 0
    for k in range(n_el):
        a = re[k]
        b = im[k]
        t_re = 1.0
        t_im = 0.0
        if parity == ODD_TERMS:
            s_re = 0.0
        else:
            s_re = 1.0
        s_im = 0.0
        done = False
        n = 1
        while n <= max_terms:
            nr = (t_re * a + t_im * b) / n
            ni = (t_re * b + t_im * a) / n
            t_re = nr
            t_im = ni
            if parity == ALL_TERMS or (parity == EVEN_TERMS) == (n % 2 == 0):
                s_re += t_re
                s_im += t_im
            if np.sqrt(t_re * t_re + t_im * t_im) < tol:
                done = True
                break
            n += 1
        if not done:
            return out_re, out_im, -1
        if n > worst:
            worst = n
        out_re[k] = s_re
        out_im[k] = s_im
    return out_re, out_im, worst


def series_sum_numpy(re, im, tol, max_terms, parity):
    a = np.asarray(re, dtype=float)
    b = np.asarray(im, dtype=float)
    t_re = np.ones_like(a)
    t_im = np.zeros_like(a)
    s_re = np.zeros_like(a) if parity == ODD_TERMS else np.ones_like(a)
    s_im = np.zeros_like(a)
    active = np.ones(a.shape, dtype=bool)
    worst = 0
    n = 1
    while n <= max_terms and active.any():
        nr = (t_re * a + t_im * b) / n
        ni = (t_re * b + t_im * a) / n
        t_re = np.where(active, nr, t_re)
        t_im = np.where(active, ni, t_im)
        if parity == ALL_TERMS or (parity == EVEN_TERMS) == (n % 2 == 0):
            s_re = np.where(active, s_re + t_re, s_re)
            s_im = np.where(active, s_im + t_im, s_im)
        finished = active & (np.sqrt(t_re * t_re + t_im * t_im) < tol)
        if finished.any():
            worst = n
        active &= ~finished
        n += 1
    if active.any():
        return s_re, s_im, -1
    return s_re, s_im, worst


# ---------------------------------------------------------------------------
# Clifford blade tables
# ---------------------------------------------------------------------------

@njit
def cayley_table_loop(n, neg_mask):
    dim = 1 << n
    idx = np.empty((dim, dim), dtype=np.int64)
    sign = np.empty((dim, dim))
    for a in range(dim):
        for b in range(dim):
            # transpositions needed to merge the generator lists of a and b
            swaps = 0
            s = a >> 1
            while s:
                x = s & b
                while x:
                    swaps += 1
                    x &= x - 1
                s >>= 1
            x = a & b & neg_mask
            while x:
                swaps += 1
                x &= x - 1
            idx[a, b] = a ^ b
            sign[a, b] = -1.0 if swaps & 1 else 1.0
    return idx, sign


def _popcount(arr):
    arr = arr.copy()
    count = np.zeros_like(arr)
    while np.any(arr):
        count += arr & 1
        arr >>= 1
    return count


def cayley_table_numpy(n, neg_mask):
    dim = 1 << n
    a = np.arange(dim, dtype=np.int64)[:, None]
    b = np.arange(dim, dtype=np.int64)[None, :]
    swaps = np.zeros((dim, dim), dtype=np.int64)
    s = a >> 1
    while np.any(s):
        swaps += _popcount(s & b)
        s = s >> 1
    swaps += _popcount(a & b & neg_mask)
    idx = np.broadcast_to(a ^ b, (dim, dim)).copy()
    sign = np.where(swaps & 1, -1.0, 1.0)
    return idx, sign


# ---------------------------------------------------------------------------
# batched geometric product  out[k] = A[k] * B[k]
# ---------------------------------------------------------------------------

@njit
def gp_batch_loop(A, B, idx, sign):
    n_el, dim = A.shape
    out = np.zeros((n_el, dim))
    for k in range(n_el):
        for i in range(dim):
            ai = A[k, i]
            if ai == 0.0:
                continue
            for j in range(dim):
                bj = B[k, j]
                if bj == 0.0:
                    continue
                out[k, idx[i, j]] += sign[i, j] * ai * bj
    return out


def gp_batch_numpy(A, B, idx, sign):
    n_el, dim = A.shape
    out = np.zeros((n_el, dim))
    for i in range(dim):
        ai = A[:, i]
        if not ai.any():
            continue
        for j in range(dim):
            bj = B[:, j]
            if not bj.any():
                continue
            out[:, idx[i, j]] += sign[i, j] * ai * bj
    return out


# ---------------------------------------------------------------------------
# central differences on a uniform 2-D lattice, interior nodes only
# ---------------------------------------------------------------------------

@njit
def grid_diff_loop(values, hx, hy):
    nx, ny, dim = values.shape
    dx = np.empty((nx - 2, ny - 2, dim))
    dy = np.empty((nx - 2, ny - 2, dim))
    for i in range(1, nx - 1):
        for j in range(1, ny - 1):
            for c in range(dim):
                dx[i - 1, j - 1, c] = (values[i + 1, j, c] - values[i - 1, j, c]) / (2.0 * hx)
                dy[i - 1, j - 1, c] = (values[i, j + 1, c] - values[i, j - 1, c]) / (2.0 * hy)
    return dx, dy


def grid_diff_numpy(values, hx, hy):
    dx = (values[2:, 1:-1] - values[:-2, 1:-1]) / (2.0 * hx)
    dy = (values[1:-1, 2:] - values[1:-1, :-2]) / (2.0 * hy)
    return dx, dy


if USE_NUMBA:
    series_sum = series_sum_loop
    cayley_table = cayley_table_loop
    gp_batch = gp_batch_loop
    grid_diff = grid_diff_loop
else:
    series_sum = series_sum_numpy
    cayley_table = cayley_table_numpy
    gp_batch = gp_batch_numpy
    grid_diff = grid_diff_numpy
