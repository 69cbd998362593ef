"""Time each hot kernel on its numba and numpy paths.

    python benchmarks/bench_kernels.py [--repeat 20]

The numba timings exclude the first (compiling) call. Both paths are also
checked for agreement on the same inputs before timing.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from relaydeploy import _kernels
from relaydeploy.graph_core import BackboneGraph


def _inputs(rng):
    n = 120
    # random connected graph: a path plus extra chords
    edges = {(i, i + 1) for i in range(n - 1)}
    while len(edges) < 3 * n:
        u, v = sorted(rng.choice(n, 2, replace=False))
        edges.add((int(u), int(v)))
    g = BackboneGraph.from_edges(n, edges)
    indptr, indices = g.csr()
    pop, dim, k = 400, 110, 4
    x = rng.random((pop, dim))
    mass = rng.random(pop)
    mass /= mass.sum()
    kbest = np.argsort(-mass)[:k].astype(np.int64)
    weights = rng.random((pop, k))
    pts = rng.integers(0, 10, size=(300, 3)).astype(np.float64) * 100.0
    return {
        "bfs_distances": (indptr, indices),
        "laplacian": (n, g.edge_array()),
        "gsa_accel": (x, mass, kbest, 500.0, 1e-5, weights),
        "within_range": (pts, pts, 141.5),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; only the numpy path can be timed")
    inputs = _inputs(np.random.default_rng(0))
    print(f"{'kernel':<14} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, args_ in inputs.items():
        ref = _kernels.NUMPY_KERNELS[name](*args_)
        t_np = min(timeit.repeat(lambda: _kernels.NUMPY_KERNELS[name](*args_), number=1, repeat=args.repeat))
        if _kernels.HAVE_NUMBA:
            fast = _kernels.NUMBA_KERNELS[name](*args_)  # compile
            if not np.allclose(ref, fast, rtol=1e-12, atol=1e-9):
                raise SystemExit(f"{name}: numba and numpy paths disagree")
            t_nb = min(timeit.repeat(lambda: _kernels.NUMBA_KERNELS[name](*args_), number=1, repeat=args.repeat))
            print(f"{name:<14} {t_np * 1e3:>10.3f} {t_nb * 1e3:>10.3f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<14} {t_np * 1e3:>10.3f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
