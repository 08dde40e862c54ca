"""Compare the compiled and pure-Python homomorphism kernels.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]

Each workload is run on both backends; the enumerated results are compared
before timings are reported.
"""

from __future__ import annotations

import argparse
import time

from xhomotopy import census, kernel
from xhomotopy.colimits import product
from xhomotopy.graph import family, identity
from xhomotopy.homotopy import homotopy_class


def _count_all(pairs, force):
    return sum(kernel.count_homs(G.adj, H.adj, force=force) for G, H in pairs)


def _classes(graphs, force):
    # homotopy classes of identities, with the backend pinned
    saved = kernel.backend
    kernel.backend = lambda: force
    try:
        return sum(len(homotopy_class(identity(G))) for G in graphs)
    finally:
        kernel.backend = saved


def workloads():
    small = census.graphs_up_to(4)
    pairs = [(G, H) for G in small for H in census.graphs(3)]
    big = [
        (family("cycle_C", 9), family("cycle_C", 7)),
        (family("cycle_C", 11), family("looped_tail_L", 4)),
        (product(family("cycle_C", 5), family("complete_K", 2)), family("complete_K", 4)),
        (family("path_I", 6), family("cycle_C", 5)),
    ]
    cores = census.graphs(5)[::40]
    return [
        ("all maps, graphs<=4 into graphs of 3", lambda f: _count_all(pairs, f)),
        ("counting maps between larger graphs", lambda f: _count_all(big, f)),
        ("homotopy classes of identities, 5 vertices", lambda f: _classes(cores, f)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernel._compiled is None:
        print("compiled kernel not built; only the pure-Python backend is available")
        return
    print(f"{'workload':45s} {'python s':>9s} {'compiled s':>11s} {'speedup':>8s}")
    for name, run in workloads():
        timings = {}
        results = {}
        for force in ("python", "compiled"):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[force] = run(force)
                best = min(best, time.perf_counter() - t0)
            timings[force] = best
        if results["python"] != results["compiled"]:
            raise SystemExit(f"{name}: backends disagree ({results})")
        py, cc = timings["python"], timings["compiled"]
        print(f"{name:45s} {py:9.3f} {cc:11.3f} {py / cc:7.1f}x")


if __name__ == "__main__":
    main()
