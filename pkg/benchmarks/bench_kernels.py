"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 16 36 64] [--repeat 3]

Both backends receive identical matrices of small rationals; results are
checked equal before any timing is reported.
"""

import argparse
import random
import time

from gmpy2 import mpq

from qca import _kernels_py

try:
    from qca import _kernels
except ImportError:
    _kernels = None


def random_matrix(rng, n, density=0.3):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j or rng.random() < density:
                row.append(mpq(rng.randint(-9, 9), rng.randint(1, 7)) + (n if i == j else 0))
            else:
                row.append(mpq(0))
        rows.append(row)
    return rows


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 36, 64])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; only the Python backend is available")
        return 1
    rng = random.Random(args.seed)
    print("%-8s %5s %12s %12s %8s" % ("kernel", "size", "python s", "compiled s", "speedup"))
    for n in args.sizes:
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        for name, call in (("matmul", lambda m: m.matmul(a, b)),
                           ("inverse", lambda m: m.inverse(a)),
                           ("det", lambda m: m.det(a))):
            if call(_kernels_py) != call(_kernels):
                raise SystemExit("backends disagree on %s at size %d" % (name, n))
            tp = best_of(lambda: call(_kernels_py), args.repeat)
            tc = best_of(lambda: call(_kernels), args.repeat)
            print("%-8s %5d %12.4f %12.4f %7.1fx" % (name, n, tp, tc, tp / tc if tc else float("inf")))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
