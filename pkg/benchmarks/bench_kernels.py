"""Compare the numba kernels against the pure-Python fallbacks.

    python benchmarks/bench_kernels.py [--sizes 50 200 800] [--repeat 5]

Each kernel runs on the same random multigraph with both backends; results
must match, and the table reports the best-of-N wall time per call.
"""

import argparse
import time

import numpy as np

from caconn import kernels


def random_net(n, m, rng):
    tail = rng.integers(0, n, m)
    head = rng.integers(0, n, m)
    return tail.astype(np.int64), head.astype(np.int64)


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(n, rng):
    m = 4 * n
    tail, head = random_net(n, m, rng)
    cap = np.ones(m, dtype=np.int64)
    deleted = rng.random(n) < 0.1
    return {
        "maxflow": (lambda impl: impl.maxflow(n, tail, head, cap, 0, n - 1, m + 1)[0]),
        "reach": (lambda impl: impl.reach(n, tail, head, 0).tolist()),
        "components": (lambda impl: impl.components(n, tail, head)),
        "internal_pairs": (lambda impl: impl.internal_pairs(n, tail, head, deleted).sum()),
    }


class _Impl:
    def __init__(self, jit):
        self.jit = jit

    def __getattr__(self, name):
        def call(*args):
            saved = kernels.USE_JIT
            kernels.USE_JIT = self.jit
            try:
                return getattr(kernels, name)(*args)
            finally:
                kernels.USE_JIT = saved
        return call


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 200, 800])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; only the fallback can run")
        return 1
    rng = np.random.default_rng(args.seed)
    jit, py = _Impl(True), _Impl(False)
    # warm up compilation once so timings measure steady state
    for fn in cases(8, rng).values():
        fn(jit)
    print(f"{'kernel':<16}{'n':>6}{'numba ms':>12}{'python ms':>12}{'speedup':>10}")
    for n in args.sizes:
        for name, fn in cases(n, rng).items():
            tj, rj = best_of(lambda: fn(jit), args.repeat)
            tp, rp = best_of(lambda: fn(py), max(1, args.repeat // 2))
            if rj != rp:
                raise SystemExit(f"{name} n={n}: backends disagree ({rj} vs {rp})")
            print(f"{name:<16}{n:>6}{tj * 1e3:>12.3f}{tp * 1e3:>12.3f}{tp / tj:>10.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
