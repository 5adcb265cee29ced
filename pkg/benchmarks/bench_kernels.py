"""Compare the compiled kernel core against the pure-Python fallback.

Times the three workloads that dominate the acceptance suite: products in the
n^2-dimensional monomial algebra, norm-image enumeration over an extension
ring, and norm-equation witness scans.  Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import random
import time

from qweyl import _speedups_py as pure

try:
    from qweyl import _speedups as fast
except ImportError:
    fast = None


def bench(label, fn, repeat=1):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return label, best


def workload_ce_mul(mod, n=12, p=13, count=400):
    rng = random.Random(0)
    s, a = 2, 3
    qpows = [pow(2, k, p) for k in range(n)]
    us = [[rng.randrange(p) for _ in range(n * n)] for _ in range(count)]
    vs = [[rng.randrange(p) for _ in range(n * n)] for _ in range(count)]

    def run():
        for u, v in zip(us, vs):
            mod.ce_mul(u, v, n, p, s, a, qpows)

    return run


def workload_norm_image(mod):
    def run():
        mod.ext_norm_image(4, 13, 2, 5, 10**5)

    return run


def workload_witness(mod):
    def run():
        for target in range(1, 13):
            mod.ext_norm_witness(4, 13, 2, 5, target, 10**6)

    return run


def main():
    rows = []
    for name, factory in (
        ("ce_mul n=12 x400", workload_ce_mul),
        ("norm_image F13^4", workload_norm_image),
        ("norm witnesses F13^4", workload_witness),
    ):
        label, t_pure = bench(f"{name} [pure]", factory(pure), repeat=2)
        rows.append((label, t_pure, None))
        if fast is not None:
            label, t_fast = bench(f"{name} [cython]", factory(fast), repeat=2)
            rows.append((label, t_fast, t_pure / t_fast))
    width = max(len(r[0]) for r in rows)
    for label, t, speedup in rows:
        extra = f"   {speedup:6.1f}x" if speedup else ""
        print(f"{label:<{width}}  {t * 1000:9.2f} ms{extra}")
    if fast is None:
        print("\ncompiled kernels unavailable: showing the fallback only")


if __name__ == "__main__":
    main()
