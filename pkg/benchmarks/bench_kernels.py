"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]

Rank scans run on partial distances of random arboreal ultrametric networks,
which pass both checks and so force a full scan. Gem and W5 scans run on
the support graph of the multi-root instance, which is gem-free and W5-free,
so those scans also run to the end.
"""

import argparse
import random
import statistics
import time

from arboreal import induced_partial_distance, support_graph
from arboreal.generate import random_arboreal_network, random_equidistant_network
from arboreal.kernels import _pykernels

try:
    from arboreal.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, arg, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def workloads(n, seed):
    rng = random.Random(seed)
    multi = induced_partial_distance(random_arboreal_network(rng, n))
    single = induced_partial_distance(random_equidistant_network(rng, n))
    adj, _ = support_graph(multi).adjacency_matrix()
    return {
        "u2 (single root)": ("u2_violation", single.rank_matrix()),
        "u3 (multi root)": ("u3_violation", multi.rank_matrix()),
        "gem (support graph)": ("find_gem", adj),
        "w5 (support graph)": ("find_w5", adj),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the fallback is timed")

    print(f"{'n':>5}  {'scan':<22}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for n in args.sizes:
        for name, (fn, arg) in workloads(n, args.seed).items():
            py, _ = best_of(getattr(_pykernels, fn), arg, args.repeat)
            if _ckernels is None:
                print(f"{n:>5}  {name:<22}{py:>10.4f}{'-':>10}{'-':>9}")
                continue
            cy, _ = best_of(getattr(_ckernels, fn), arg, args.repeat)
            assert getattr(_ckernels, fn)(arg) == getattr(_pykernels, fn)(arg)
            print(f"{n:>5}  {name:<22}{py:>10.4f}{cy:>10.4f}{py / cy if cy else float('inf'):>8.1f}x")


if __name__ == "__main__":
    main()
