"""Compare the compiled and pure-Python row-reduction kernels.

    python3 benchmarks/bench_kernels.py [--sizes 20,40,80] [--repeat 3] [--seed 0]
"""

import argparse
import random
import statistics
import time
from fractions import Fraction

from sympdef import _rref_py

try:
    from sympdef import _rref_c
except ImportError:  # extension not built
    _rref_c = None


def random_matrix(rng, rows, cols, density=0.4, rank_deficit=0):
    m = [[Fraction(rng.randint(-9, 9), rng.choice([1, 1, 2, 3])) if rng.random() < density else Fraction(0)
          for _ in range(cols)] for _ in range(rows)]
    # repeat some rows as combinations so the kernel has work to cancel
    for k in range(rank_deficit):
        a, b = rng.randrange(rows), rng.randrange(rows)
        m[(a + k) % rows] = [x + 2 * y for x, y in zip(m[a], m[b])]
    return m


def best_time(fn, rows, ncols, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(rows, ncols)
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="20,40,80")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    if _rref_c is None:
        print("compiled kernel not available; timing the pure-Python kernel only")
    print(f"{'size':>6} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in sizes:
        m = random_matrix(rng, n, n + n // 2, rank_deficit=n // 4)
        ref = _rref_py.rref(m, len(m[0]))
        py, _ = best_time(_rref_py.rref, m, len(m[0]), args.repeat)
        if _rref_c is None:
            print(f"{n:>6} {py:>12.4f} {'-':>12} {'-':>8}")
            continue
        if _rref_c.rref(m, len(m[0])) != ref:
            raise SystemExit(f"kernels disagree on a {n}x{len(m[0])} matrix")
        cy, _ = best_time(_rref_c.rref, m, len(m[0]), args.repeat)
        print(f"{n:>6} {py:>12.4f} {cy:>12.4f} {py / cy:>7.2f}x")


if __name__ == "__main__":
    main()
