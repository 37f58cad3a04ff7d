"""Time the numba kernels against the pure-numpy fallback on grid and random graphs.

    python3 benchmarks/bench_kernels.py [--sizes 16,32,48] [--repeat 3]
"""
import argparse
import time

import numpy as np

from stablecover import _kernels
from stablecover.graph_core import grid_graph
from stablecover.set_system import neighborhood_system


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16,32,48")
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)
    if _kernels.numba_impl is None:
        print("numba unavailable; only the numpy path can run")
    backends = [b for b in ("numba", "numpy") if b == "numpy" or _kernels.numba_impl is not None]
    print("kernel,n,backend,seconds")
    for side in (int(x) for x in a.sizes.split(",")):
        g = grid_graph(side)
        sys_ = neighborhood_system(g)
        member = np.ascontiguousarray(sys_.member)
        rank = np.random.default_rng(0).permutation(g.n).astype(np.int64)
        perm = np.arange(g.n, dtype=np.int64)
        closed = g.closed_matrix()
        for name in backends:
            k = _kernels.impl(name)
            # one warm-up call so numba compile time is not counted
            k.welzl_greedy(member, rank, 0)
            k.bfs_all_pairs(g.indptr, g.indices, g.n, -1)
            k.compact_intervals(closed, perm)
            k.crossings(member, perm)
            jobs = {
                "welzl_greedy": lambda: k.welzl_greedy(member, rank, 0),
                "bfs_all_pairs": lambda: k.bfs_all_pairs(g.indptr, g.indices, g.n, -1),
                "compact_intervals": lambda: k.compact_intervals(closed, perm),
                "crossings": lambda: k.crossings(member, perm),
            }
            for kname, fn in jobs.items():
                print(f"{kname},{g.n},{name},{_best(fn, a.repeat):.6f}")


if __name__ == "__main__":
    main()
