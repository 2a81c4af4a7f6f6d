"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run:  python benchmarks/bench_kernels.py [--n 16] [--masks 2000] [--pivots 50]

The same functions back the Walsh-Hadamard transform, the bipartition PT
sweeps, and the simplex pivot; `graphwit._kernels` picks the compiled
extension when it is importable and GRAPHWIT_NO_EXT is unset.
"""

import argparse
import time

import numpy as np

import graphwit
from graphwit import _kernels
from graphwit._kernels import fallback
from graphwit.stabilizer import y_bit_table


def timed(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=16, help="qubit count for WHT/sweep")
    ap.add_argument("--masks", type=int, default=2000, help="bipartitions to sweep")
    ap.add_argument("--pivots", type=int, default=50, help="simplex pivots to time")
    args = ap.parse_args()

    if not graphwit.HAVE_EXT:
        print("note: compiled extension unavailable; comparing fallback to itself")
    rng = np.random.default_rng(0)
    n = args.n
    size = 1 << n

    v = rng.standard_normal(size)
    t_ext = timed(lambda: _kernels.wht_inplace(v.copy()))
    t_py = timed(lambda: fallback.wht_inplace(v.copy()))
    print(f"wht (2^{n}):          ext {t_ext*1e3:8.2f} ms   numpy {t_py*1e3:8.2f} ms   x{t_py/t_ext:.1f}")

    g = graphwit.make_named("grid", 4, 4, periodic=True) if n == 16 else graphwit.make_named("linear", n)
    rec = graphwit.torus_witness(g) if n == 16 else graphwit.projector_witness(g)
    c = np.ascontiguousarray(rec.op.stab)
    y = np.ascontiguousarray(y_bit_table(g))
    masks = np.array(
        [m << 1 for m in range(1, 1 << (n - 1))][: args.masks], dtype=np.int64
    )
    out = np.empty(masks.size)
    t_ext = timed(lambda: _kernels.pt_sweep_min(c, y, masks, out), repeat=2)
    t_py = timed(lambda: fallback.pt_sweep_min(c, y, masks, out), repeat=2)
    print(f"pt sweep ({masks.size} cuts): ext {t_ext:8.2f} s    numpy {t_py:8.2f} s    x{t_py/t_ext:.1f}")

    m, cols = 1921, 3969
    T0 = np.ascontiguousarray(rng.standard_normal((m, cols)))
    T0[:, :m] += np.eye(m) * 5.0

    def pivots(fn):
        T = T0.copy()  # fresh tableau; pivots mutate it
        t0 = time.perf_counter()
        for k in range(args.pivots):
            fn(T, k % m, k % m)
        return time.perf_counter() - t0

    t_ext = min(pivots(_kernels.pivot_update) for _ in range(2))
    t_py = min(pivots(fallback.pivot_update) for _ in range(2))
    print(f"pivot ({args.pivots}x {m}x{cols}):  ext {t_ext:8.2f} s    numpy {t_py:8.2f} s    x{t_py/t_ext:.1f}")


if __name__ == "__main__":
    main()
