"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from secondham import kernels
from secondham.approx import partition_blocks, short_chord_limit
from secondham.generators import quarter_reflection, random_cubic
from secondham.graph import adjacency_csr, to_general


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0


def cases():
    g = random_cubic(18, 4)
    indptr, indices = adjacency_csr(g)
    yield "hc_enumerate n=18", lambda b: b.hc_enumerate(indptr, indices, g.n, 10**6)

    big = random_cubic(2000, 1)
    partner = np.asarray(big.partner, dtype=np.int64)
    yield "lollipop_walk n=2000", lambda b: b.lollipop_walk(partner, big.n, False, 10**7)

    q = to_general(quarter_reflection(100_000))
    part = partition_blocks(q.n, 1)
    block_of = part.block_of
    limit = short_chord_limit(q.n, 1)
    yield "approx_scan n=100000", lambda b: b.approx_scan(q.n, q.indptr, q.indices, block_of,
                                                         part.starts, part.r, limit)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        print("compiled extension not available; only the Python timings are shown")
    print(f"{'kernel':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, call in cases():
        py = best_of(lambda: call(kernels.python_backend), args.repeat)
        if kernels.compiled_backend is None:
            print(f"{name:<24}{py:>12.2f}{'-':>12}{'-':>10}")
            continue
        cy = best_of(lambda: call(kernels.compiled_backend), args.repeat)
        print(f"{name:<24}{py:>12.2f}{cy:>12.3f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
