"""Compare the numba kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--nmax 10]

Each kernel is run once untimed per backend (numba compiles or loads its cache
there), then timed ``--repeat`` times; the best time is reported.  Outputs are
checked for equality before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fishburn import _kernels


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench(label: str, kernel, arg: int, repeat: int) -> None:
    ref = kernel(arg, backend="numpy")
    out = kernel(arg, backend="numba")
    same = np.array_equal(np.sort(ref, axis=None), np.sort(out, axis=None))
    t_numba = best_of(lambda: kernel(arg, backend="numba"), repeat)
    t_numpy = best_of(lambda: kernel(arg, backend="numpy"), repeat)
    print(f"{label:<28} {t_numba * 1e3:10.2f} {t_numpy * 1e3:10.2f} "
          f"{t_numpy / t_numba:8.1f}x  {'ok' if same else 'MISMATCH'}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--nmax", type=int, default=10, help="longest ascent sequences")
    args = parser.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':<28} {'numba ms':>10} {'numpy ms':>10} {'speedup':>9}")
    for nmax in range(max(args.nmax - 2, 0), args.nmax + 1):
        bench(f"ascent_stat_counts({nmax})", _kernels.ascent_stat_counts, nmax, args.repeat)
    for n in (4, 5):
        bench(f"strict_order_masks({n})", _kernels.strict_order_masks, n, args.repeat)


if __name__ == "__main__":
    main()
