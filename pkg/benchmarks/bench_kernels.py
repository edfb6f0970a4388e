"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--nodes N] [--repeat R]
"""

import argparse
import time

from wsnet import _pykernels, generators, theory

try:
    from wsnet import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    n = args.nodes
    cases = {
        "grow_wsm alpha=3": lambda: generators.generate(generators.GrowthConfig.fixed_alpha(3, n, seed=1)),
        "grow_wsm beta=1.5": lambda: generators.generate(generators.GrowthConfig.variable_beta(1.5, n // 10, seed=1)),
        "grow_ba w=3": lambda: generators.generate(generators.GrowthConfig.ba(3, n, seed=1)),
        "advance_recurrence alpha=1": lambda: theory.integrate_recurrence(n // 10, alpha=1, k_max=2000),
    }
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'case':30s} " + " ".join(f"{name:>10s}" for name, _ in backends) + "    speedup")
    for label, fn in cases.items():
        times = []
        for _, mod in backends:
            generators.kernels = theory.kernels = mod
            times.append(_time(fn, args.repeat))
        speedup = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
        print(f"{label:30s} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speedup}")
    if _ckernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
