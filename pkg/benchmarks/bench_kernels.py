"""Compare the compiled and pure-Python kernels on seeded random graphs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per (kernel, instance, backend) with the best wall time and
the speed-up over the pure-Python backend.  Outputs are checked to agree.
"""

import argparse
import time

import numpy as np

from matchlab.generators import gen_random_graph
from matchlab.kernels import backends
from matchlab.local import greedy_cone, view_tree

CASES = [(200, 4), (2000, 6), (20000, 6)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    impls = backends()
    if "cython" not in impls:
        print("compiled backend not built; only the pure-Python timings are shown")
    for n, k in CASES:
        g = gen_random_graph(n, k, seed=n)
        adj = g.adjacency_array(k)
        parent, colour = greedy_cone(view_tree(g, 0, k, k))
        tree_p = np.asarray(parent, dtype=np.int32)
        tree_c = np.asarray(colour, dtype=np.int32)
        kernels = {
            "greedy_graph": lambda m: m.greedy_graph(adj, k),
            "greedy_views": lambda m: m.greedy_views(adj, k, k),
            "greedy_tree": lambda m: m.greedy_tree(tree_p, tree_c, k),
        }
        for name, call in kernels.items():
            timings = {}
            outputs = {}
            for label, mod in impls.items():
                timings[label], outputs[label] = best_of(lambda: call(mod), args.repeat)
            first = next(iter(outputs.values()))
            agree = all(np.array_equal(first, o) for o in outputs.values())
            for label, t in timings.items():
                speedup = timings["python"] / t if t > 0 else float("inf")
                print(f"{name:13s} n={n:<6d} k={k} {label:7s} {t * 1e3:9.3f} ms  x{speedup:6.1f}  agree={agree}")


if __name__ == "__main__":
    main()
