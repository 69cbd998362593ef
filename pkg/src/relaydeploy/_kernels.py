"""Hot inner loops, compiled with numba when available.

Every kernel has a pure-numpy twin with an identical signature. The numba
path is used by default; set ``RELAYDEPLOY_DISABLE_NUMBA=1`` before import to
force the numpy path (useful for debugging and for the benchmark). Both paths
consume the same pre-drawn random numbers, so they agree to rounding.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("RELAYDEPLOY_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:  # pragma: no cover - exercised implicitly
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# all-pairs BFS over a CSR adjacency
# ---------------------------------------------------------------------------


def _bfs_distances_numpy(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    n = indptr.shape[0] - 1
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        frontier = np.array([s], dtype=np.int64)
        level = 0
        while frontier.size:
            level += 1
            nbrs = np.unique(
                np.concatenate([indices[indptr[u] : indptr[u + 1]] for u in frontier])
            )
            nbrs = nbrs[row[nbrs] < 0]
            row[nbrs] = level
            frontier = nbrs
    return dist


@njit(cache=True)
def _bfs_distances_numba(indptr, indices):  # pragma: no cover - compiled
    n = indptr.shape[0] - 1
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[s, u]
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[s, v] < 0:
                    dist[s, v] = du + 1
                    queue[tail] = v
                    tail += 1
    return dist


# ---------------------------------------------------------------------------
# Laplacian assembly from an edge array
# ---------------------------------------------------------------------------


def _laplacian_numpy(n: int, edges: np.ndarray) -> np.ndarray:
    lap = np.zeros((n, n), dtype=np.int64)
    if edges.shape[0]:
        u = edges[:, 0]
        v = edges[:, 1]
        lap[u, v] = -1
        lap[v, u] = -1
        deg = np.bincount(np.concatenate((u, v)), minlength=n)
        lap[np.arange(n), np.arange(n)] = deg
    return lap


@njit(cache=True)
def _laplacian_numba(n, edges):  # pragma: no cover - compiled
    lap = np.zeros((n, n), dtype=np.int64)
    for e in range(edges.shape[0]):
        u = edges[e, 0]
        v = edges[e, 1]
        lap[u, v] = -1
        lap[v, u] = -1
        lap[u, u] += 1
        lap[v, v] += 1
    return lap


# ---------------------------------------------------------------------------
# GSA acceleration
# ---------------------------------------------------------------------------


def _gsa_accel_numpy(x, mass, kbest, g, eps, weights):
    # weights[i, m] is the random factor for the pull of kbest[m] on agent i
    xk = x[kbest]  # (K, D)
    diff = xk[None, :, :] - x[:, None, :]  # (N, K, D)
    dist = np.sqrt(np.sum(diff * diff, axis=2))  # (N, K)
    coef = weights * g * mass[kbest][None, :] / (dist + eps)
    self_pull = kbest[None, :] == np.arange(x.shape[0])[:, None]
    coef = np.where(self_pull, 0.0, coef)
    return np.einsum("nk,nkd->nd", coef, diff)


@njit(cache=True)
def _gsa_accel_numba(x, mass, kbest, g, eps, weights):  # pragma: no cover
    n, d = x.shape
    acc = np.zeros((n, d))
    for i in range(n):
        for m in range(kbest.shape[0]):
            j = kbest[m]
            if j == i:
                continue
            r2 = 0.0
            for k in range(d):
                t = x[j, k] - x[i, k]
                r2 += t * t
            c = weights[i, m] * g * mass[j] / (np.sqrt(r2) + eps)
            for k in range(d):
                acc[i, k] += c * (x[j, k] - x[i, k])
    return acc


# ---------------------------------------------------------------------------
# pairwise range test between two point clouds
# ---------------------------------------------------------------------------


def _within_range_numpy(a, b, radius):
    diff = a[:, None, :] - b[None, :, :]
    return np.sum(diff * diff, axis=2) <= radius * radius


@njit(cache=True)
def _within_range_numba(a, b, radius):  # pragma: no cover - compiled
    out = np.zeros((a.shape[0], b.shape[0]), dtype=np.bool_)
    r2 = radius * radius
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            s = 0.0
            for k in range(a.shape[1]):
                t = a[i, k] - b[j, k]
                s += t * t
            out[i, j] = s <= r2
    return out


NUMPY_KERNELS = {
    "bfs_distances": _bfs_distances_numpy,
    "laplacian": _laplacian_numpy,
    "gsa_accel": _gsa_accel_numpy,
    "within_range": _within_range_numpy,
}

NUMBA_KERNELS = {
    "bfs_distances": _bfs_distances_numba,
    "laplacian": _laplacian_numba,
    "gsa_accel": _gsa_accel_numba,
    "within_range": _within_range_numba,
}

_ACTIVE = NUMBA_KERNELS if HAVE_NUMBA else NUMPY_KERNELS

bfs_distances = _ACTIVE["bfs_distances"]
laplacian_from_edges = _ACTIVE["laplacian"]
gsa_acceleration = _ACTIVE["gsa_accel"]
within_range = _ACTIVE["within_range"]
