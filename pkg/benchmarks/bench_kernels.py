"""Time the compiled loop kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat N]

Both flavours are called directly, so the comparison does not depend on
HYPAN_DISABLE_NUMBA. Without numba installed the loop flavour runs as plain
Python and is expected to be slow.
"""
import argparse
import timeit

import numpy as np

from hypan import _accel, _kernels
from hypan.clifford import Signature


def cases(rng):
    re, im = rng.uniform(-4, 4, 20_000), rng.uniform(-4, 4, 20_000)
    yield "series_sum (20k points)", (re, im, 1e-15, 256, _kernels.ALL_TERMS)
    sig = Signature.pq(3, 1)
    idx, sign = sig.tables()
    A, B = rng.normal(size=(20_000, sig.dim)), rng.normal(size=(20_000, sig.dim))
    yield "gp_batch (20k products, Cl(3,1))", (A, B, idx, sign)
    yield "cayley_table (6 generators)", (6, 0b101010)
    yield "grid_diff (201x201x4)", (rng.normal(size=(201, 201, 4)), 0.01, 0.01)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"numba available: {_accel.HAVE_NUMBA}; library backend: {_accel.backend_name()}")
    print(f"{'kernel':<36} {'loop ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for label, call_args in cases(rng):
        name = label.split()[0]
        loop, vec = getattr(_kernels, f"{name}_loop"), getattr(_kernels, f"{name}_numpy")
        loop(*call_args)   # compile outside the timed region
        t_loop = min(timeit.repeat(lambda: loop(*call_args), number=1, repeat=args.repeat))
        t_vec = min(timeit.repeat(lambda: vec(*call_args), number=1, repeat=args.repeat))
        print(f"{label:<36} {t_loop * 1e3:>10.2f} {t_vec * 1e3:>10.2f} {t_vec / t_loop:>7.1f}x")


if __name__ == "__main__":
    main()
