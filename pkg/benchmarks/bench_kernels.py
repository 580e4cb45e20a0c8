"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from permwalk import _kernels_py
from permwalk.permgroup import random_permutation

try:
    from permwalk import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)

    for n, k in [(16, 8), (20, 10)]:
        yield (f"enumerate_states N={n} k={k}",
               lambda mod, n=n, k=k: mod.enumerate_states(n, k))

    for n, k in [(16, 8), (20, 10)]:
        states = _kernels_py.enumerate_states(n, k)
        sigma = random_permutation(n, rng)
        images0 = np.array([sigma(i + 1) - 1 for i in range(n)], dtype=np.int64)
        yield (f"realize_perm N={n} k={k} (dim {len(states)})",
               lambda mod, s=states, k=k, im=images0: mod.realize_perm(s, k, im))

    for n, k in [(16, 8), (18, 9)]:
        states = _kernels_py.enumerate_states(n, k)
        weights = np.ones((n, n)) - np.eye(n)
        yield (f"bilinear_accumulate N={n} k={k} (dim {len(states)})",
               lambda mod, s=states, w=weights: mod.bilinear_accumulate(s, w, True))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _kernels_c is None:
        print("compiled extension not available; showing pure Python only\n")

    header = f"{'kernel':<44} {'python':>10} {'compiled':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call in cases():
        t_py = best_of(lambda: call(_kernels_py), args.repeat)
        if _kernels_c is not None:
            t_c = best_of(lambda: call(_kernels_c), args.repeat)
            print(f"{name:<44} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:8.1f}x")
        else:
            print(f"{name:<44} {t_py * 1e3:9.2f}ms {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
