"""Backbone graphs, Laplacians and the spectral quantities derived from them."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DisconnectedGraphError, DomainError, SpectralError

TOL_EIG = 1e-8


@dataclass(frozen=True)
class BackboneGraph:
    """Undirected simple graph over backbone devices.

    ``edges`` holds pairs ``(u, v)`` with ``u < v``. ``coords`` is optional and,
    when present, stores one integer grid position per node.
    """

    node_count: int
    edges: frozenset = frozenset()
    coords: tuple | None = None
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise DomainError("a graph needs at least one node")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop on node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise DomainError(f"edge ({u}, {v}) outside [0, {self.node_count})")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.coords is not None:
            coords = tuple(tuple(int(c) for c in p) for p in self.coords)
            if len(coords) != self.node_count:
                raise DomainError("one coordinate per node is required")
            object.__setattr__(self, "coords", coords)
        adj = [[] for _ in range(self.node_count)]
        for u, v in sorted(norm):
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(
        cls, node_count: int, edges: Iterable[Sequence[int]], coords=None
    ) -> "BackboneGraph":
        return cls(node_count, frozenset(tuple(e) for e in edges), coords)

    def neighbors(self, u: int) -> tuple:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def edge_array(self) -> np.ndarray:
        """Edges as a sorted ``(m, 2)`` int64 array."""
        if not self.edges:
            return np.empty((0, 2), dtype=np.int64)
        return np.array(sorted(self.edges), dtype=np.int64)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form: ``(indptr, indices)``."""
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self._adj])
        indices = np.array([v for a in self._adj for v in a], dtype=np.int64)
        return indptr, indices

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "BackboneGraph":
        return BackboneGraph(self.node_count, self.edges | {tuple(e) for e in extra}, self.coords)

    # -- edge-list text format -------------------------------------------

    def to_edge_list(self) -> str:
        lines = [f"n={self.node_count}"]
        lines += [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "BackboneGraph":
        """Parse the ``n=<count>`` header followed by ``u v`` lines.

        Blank lines and ``#`` comments are ignored.
        """
        rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        rows = [r for r in rows if r]
        if not rows or not rows[0].startswith("n="):
            raise DomainError("edge list must start with an 'n=<count>' header")
        n = int(rows[0][2:])
        edges = []
        for r in rows[1:]:
            parts = r.split()
            if len(parts) != 2:
                raise DomainError(f"malformed edge line: {r!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls.from_edges(n, edges)


@dataclass(frozen=True)
class SpectralSummary:
    """Ascending Laplacian eigenvalues plus the tolerance used to read them."""

    eigenvalues: np.ndarray
    tol_eig: float = TOL_EIG

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def fiedler(self) -> float:
        # a single vertex has no second eigenvalue; report 0
        if self.n < 2:
            return 0.0
        return float(self.eigenvalues[1])

    @property
    def connected(self) -> bool:
        return self.n == 1 or self.fiedler > self.tol_eig


def build_laplacian(g: BackboneGraph) -> np.ndarray:
    """Combinatorial Laplacian ``D - A`` as an int64 matrix."""
    return _kernels.laplacian_from_edges(g.node_count, g.edge_array())


def spectral_summary(lap: np.ndarray, tol_eig: float = TOL_EIG) -> SpectralSummary:
    lap = np.asarray(lap, dtype=np.float64)
    try:
        vals = np.linalg.eigvalsh(lap)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(lap.shape[0], str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise SpectralError(lap.shape[0], "non-finite eigenvalues")
    return SpectralSummary(np.sort(vals), tol_eig)


def fiedler_value(lap: np.ndarray, tol_eig: float = TOL_EIG) -> float:
    return spectral_summary(lap, tol_eig).fiedler


def wiener_spectral(summary: SpectralSummary) -> float:
    """Wiener index as ``n * sum(1 / lambda_i)`` over the non-zero spectrum.

    Exact on trees. On graphs with cycles it underestimates the path-count
    Wiener index; the optimizer uses it as its surrogate regardless.
    """
    if summary.n < 2:
        return 0.0
    if summary.fiedler <= summary.tol_eig:
        raise DisconnectedGraphError(
            f"algebraic connectivity {summary.fiedler:.3g} <= {summary.tol_eig:g}"
        )
    return float(summary.n * np.sum(1.0 / summary.eigenvalues[1:]))


def distance_matrix(g: BackboneGraph) -> np.ndarray:
    """All-pairs hop distances; ``-1`` marks unreachable pairs."""
    indptr, indices = g.csr()
    return _kernels.bfs_distances(indptr, indices)


def wiener_bfs(g: BackboneGraph) -> float:
    """Half the sum of all pairwise hop distances, by breadth-first search."""
    dist = distance_matrix(g)
    if np.any(dist < 0):
        raise DisconnectedGraphError("graph has more than one component")
    return float(dist.sum() // 2)


def average_distance(wiener: float, n: int, delta_mu: float = 0.0) -> float:
    """Average internode distance ``W / C(n, 2) + delta_mu``."""
    if n < 2:
        raise DomainError(f"average distance needs n >= 2, got {n}")
    if wiener < 0 or delta_mu < 0:
        raise DomainError("wiener index and delta_mu must be non-negative")
    return wiener / comb(n, 2) + delta_mu


def is_connected(g: BackboneGraph) -> bool:
    if g.node_count == 1:
        return True
    seen = np.zeros(g.node_count, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return bool(seen.all())
