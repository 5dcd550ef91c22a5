"""Time the affine Demazure kernels with and without numba.

    python benchmarks/bench_kernels.py [--repeat 3]

Both paths must produce identical formal sums; the script exits nonzero if not.
"""
import argparse
import sys
import time

import numpy as np

from qwhittaker import build_root_system
from qwhittaker._accel import HAVE_NUMBA
from qwhittaker.affdem import affine_demazure_sum

CASES = [("A2", (4, 4)), ("A2", (10, 10)), ("A3", (3, 2, 3)), ("D4", (2, 1, 2, 2)), ("E6", (1, 0, 0, 0, 0, 1))]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed (or QWHITTAKER_NO_NUMBA is set); nothing to compare")
        return 0
    # compile outside the timed region
    affine_demazure_sum(build_root_system("A1"), (2,), use_numba=True)
    print(f"{'case':<22}{'terms':>10}{'numpy s':>11}{'numba s':>11}{'speedup':>9}")
    status = 0
    for label, lam in CASES:
        rs = build_root_system(label)
        t_np, (W0, m0) = best_of(lambda: affine_demazure_sum(rs, lam, use_numba=False), args.repeat)
        t_nb, (W1, m1) = best_of(lambda: affine_demazure_sum(rs, lam, use_numba=True), args.repeat)
        same = np.array_equal(W0, W1) and np.array_equal(m0, m1)
        status |= not same
        name = f"{label} {','.join(map(str, lam))}"
        print(f"{name:<22}{len(m0):>10}{t_np:>11.4f}{t_nb:>11.4f}{t_np / t_nb:>8.1f}x" + ("" if same else "  MISMATCH"))
    return status


if __name__ == "__main__":
    sys.exit(main())
