"""3-D grid model, first-phase backbone construction and candidate sites.

Grid vertices are integer triples ``(x, y, z)``; physical positions are the
vertex times ``spacing_m``. Two devices can talk iff their Euclidean distance
is at most ``comm_range_m``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ConfigurationError, DomainError
from .graph_core import BackboneGraph, build_laplacian

Vertex = tuple

BS, CH, FPRN, SPRN = "BS", "CH", "FPRN", "SPRN"
ROLES = (BS, CH, FPRN, SPRN)

_RANGE_EPS = 1e-9


@dataclass(frozen=True)
class GridSpec:
    dims: tuple = (10, 10, 3)
    spacing_m: float = 100.0
    comm_range_m: float = 100.0

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3 or min(dims) < 1:
            raise ConfigurationError(f"grid dims must be three positive integers, got {self.dims}")
        object.__setattr__(self, "dims", dims)
        if self.spacing_m <= 0 or self.comm_range_m <= 0:
            raise ConfigurationError("spacing and communication range must be positive")
        if self.spacing_m > self.comm_range_m + _RANGE_EPS:
            raise ConfigurationError(
                "adjacent grid vertices must be able to communicate "
                f"(spacing {self.spacing_m} m > range {self.comm_range_m} m)"
            )

    @property
    def size(self) -> int:
        return self.dims[0] * self.dims[1] * self.dims[2]

    def contains(self, v: Sequence[int]) -> bool:
        return len(v) == 3 and all(0 <= int(c) < d for c, d in zip(v, self.dims))

    def vertices(self) -> list:
        """All grid vertices in lexicographic order."""
        return list(product(*(range(d) for d in self.dims)))

    def in_range(self, u: Sequence[int], v: Sequence[int]) -> bool:
        d2 = sum((a - b) ** 2 for a, b in zip(u, v)) * self.spacing_m**2
        return d2 <= (self.comm_range_m + _RANGE_EPS) ** 2

    @cached_property
    def link_offsets(self) -> tuple:
        """Lattice offsets reachable in one hop, in a fixed order."""
        reach = int(self.comm_range_m // self.spacing_m) + 1
        span = range(-reach, reach + 1)
        offs = [o for o in product(span, span, span) if any(o) and self.in_range((0, 0, 0), o)]
        # shortest hops first, then lexicographic
        offs.sort(key=lambda o: (o[0] ** 2 + o[1] ** 2 + o[2] ** 2, o))
        return tuple(offs)

    def range_in_grid_units(self) -> float:
        return (self.comm_range_m + _RANGE_EPS) / self.spacing_m


@dataclass(frozen=True)
class SeedLayout:
    bs: Vertex
    chs: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "bs", tuple(int(c) for c in self.bs))
        object.__setattr__(self, "chs", tuple(tuple(int(c) for c in v) for v in self.chs))
        pts = (self.bs,) + self.chs
        if len(set(pts)) != len(pts):
            raise DomainError("BS and CH positions must be distinct")

    @property
    def seeds(self) -> tuple:
        return (self.bs,) + self.chs

    def validate(self, grid: GridSpec) -> None:
        for v in self.seeds:
            if not grid.contains(v):
                raise DomainError(f"layout vertex {v} lies outside grid {grid.dims}")


@dataclass(frozen=True)
class Backbone:
    """Placed devices and the communication graph they induce."""

    devices: tuple  # ((vertex, role), ...)
    grid: GridSpec

    @cached_property
    def vertices(self) -> tuple:
        return tuple(v for v, _ in self.devices)

    @cached_property
    def roles(self) -> tuple:
        return tuple(r for _, r in self.devices)

    def indices(self, role: str) -> list:
        return [i for i, r in enumerate(self.roles) if r == role]

    @property
    def bs_index(self) -> int:
        return self.roles.index(BS)

    @property
    def relay_indices(self) -> list:
        return [i for i, r in enumerate(self.roles) if r in (FPRN, SPRN)]

    def count(self, role: str) -> int:
        return sum(1 for r in self.roles if r == role)

    @cached_property
    def positions_m(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=np.float64) * self.grid.spacing_m

    @cached_property
    def graph(self) -> BackboneGraph:
        n = len(self.devices)
        pos = self.positions_m
        adj = _kernels.within_range(pos, pos, self.grid.comm_range_m + _RANGE_EPS)
        iu, ju = np.nonzero(np.triu(adj, k=1))
        return BackboneGraph(n, frozenset(zip(iu.tolist(), ju.tolist())), self.vertices)

    def laplacian(self) -> np.ndarray:
        return build_laplacian(self.graph)

    def augmented(self, sprn_vertices: Sequence[Vertex]) -> "Backbone":
        extra = tuple((tuple(v), SPRN) for v in sprn_vertices)
        return Backbone(self.devices + extra, self.grid)

    def dump(self) -> str:
        """One ``role x y z`` line per device."""
        return "".join(f"{r} {v[0]} {v[1]} {v[2]}\n" for v, r in self.devices)

    @classmethod
    def load(cls, text: str, grid: GridSpec) -> "Backbone":
        devices = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            role, *xyz = line.split()
            if role not in ROLES or len(xyz) != 3:
                raise DomainError(f"malformed device line: {line!r}")
            devices.append((tuple(int(c) for c in xyz), role))
        return cls(tuple(devices), grid)


@dataclass(frozen=True)
class CandidateSet:
    vertices: tuple

    def __len__(self) -> int:
        return len(self.vertices)


def _euclid2(u: Vertex, v: Vertex) -> int:
    return (u[0] - v[0]) ** 2 + (u[1] - v[1]) ** 2 + (u[2] - v[2]) ** 2


def rn_chain(u: Vertex, v: Vertex, grid: GridSpec) -> list:
    """Interior vertices of a minimum-hop lattice path from ``u`` to ``v``.

    Hops follow ``grid.link_offsets``; with range equal to spacing this is the
    6-neighbourhood and the chain has Manhattan distance minus one vertices.
    The BFS expands offsets in a fixed order so the chain is deterministic.
    """
    u, v = tuple(u), tuple(v)
    if u == v:
        raise DomainError("rn_chain needs two distinct vertices")
    if not (grid.contains(u) and grid.contains(v)):
        raise DomainError(f"{u} or {v} outside grid {grid.dims}")
    if grid.in_range(u, v):
        return []
    offsets = grid.link_offsets
    parent = {u: None}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        for off in offsets:
            nxt = (cur[0] + off[0], cur[1] + off[1], cur[2] + off[2])
            if nxt in parent or not grid.contains(nxt):
                continue
            parent[nxt] = cur
            if grid.in_range(nxt, v):
                path = []
                node = nxt
                while node != u:
                    path.append(node)
                    node = parent[node]
                return path[::-1]
            queue.append(nxt)
    raise ConfigurationError(f"no lattice path between {u} and {v}")  # pragma: no cover


def _closest(target: Vertex, pool) -> Vertex:
    return min(pool, key=lambda w: (_euclid2(target, w), w))


def mst_backbone(layout: SeedLayout, grid: GridSpec) -> Backbone:
    """Connect BS and CHs with the fewest first-phase relays, Prim style.

    Start from the closest seed pair, then repeatedly attach the outstanding
    seed whose relay chain to its nearest connected device is shortest.
    Ties fall back to Euclidean distance, then lexicographic vertex order.
    """
    layout.validate(grid)
    role_of = {layout.bs: BS}
    role_of.update({c: CH for c in layout.chs})
    seeds = list(layout.seeds)
    devices = [(layout.bs, BS)] + [(c, CH) for c in layout.chs]
    if len(seeds) == 1:
        return Backbone(tuple(devices), grid)

    pairs = [(a, b) for i, a in enumerate(seeds) for b in seeds[i + 1 :]]
    a, b = min(pairs, key=lambda p: (_euclid2(*p), min(p), max(p)))
    component = [a, b]
    relays: list = []

    def absorb(chain):
        for w in chain:
            if w in role_of or w in component:
                continue
            relays.append(w)
            component.append(w)

    absorb(rn_chain(a, b, grid))
    remaining = [s for s in seeds if s not in (a, b)]
    while remaining:
        best = None
        for s in remaining:
            if s in component:
                # already swallowed by an earlier chain
                best = (-1, 0, s, [])
                break
            tgt = _closest(s, component)
            chain = rn_chain(s, tgt, grid)
            key = (len(chain), _euclid2(s, tgt), s, chain)
            if best is None or key[:3] < best[:3]:
                best = key
        _, _, s, chain = best
        absorb(chain)
        if s not in component:
            component.append(s)
        remaining.remove(s)

    devices += [(w, FPRN) for w in relays]
    return Backbone(tuple(devices), grid)


def enumerate_candidates(backbone: Backbone, grid: GridSpec, n_c: int) -> CandidateSet:
    """The ``n_c`` free grid vertices nearest the backbone.

    Distance is Euclidean to the closest occupied vertex; ties at the cut-off
    are broken by lexicographic ``(x, y, z)``.
    """
    occupied = set(backbone.vertices)
    free = [v for v in grid.vertices() if v not in occupied]
    if len(free) < n_c:
        raise ConfigurationError(f"only {len(free)} free vertices, {n_c} candidates requested")
    occ = np.asarray(sorted(occupied), dtype=np.int64)
    fr = np.asarray(free, dtype=np.int64)
    d2 = ((fr[:, None, :] - occ[None, :, :]) ** 2).sum(axis=2).min(axis=1)
    order = sorted(range(len(free)), key=lambda i: (int(d2[i]), free[i]))
    # stored in lexicographic order so decision-vector indices carry no
    # distance information that tie-breaking could exploit
    return CandidateSet(tuple(sorted(free[i] for i in order[:n_c])))


class AugmentationTable:
    """Precomputed candidate links for fast assembly of augmented Laplacians.

    ``to_backbone[c, b]`` is true when candidate ``c`` reaches backbone device
    ``b``; ``among[c, c']`` when two candidates reach each other.
    """

    def __init__(self, backbone: Backbone, candidates: CandidateSet, grid: GridSpec) -> None:
        self.n_backbone = len(backbone.devices)
        self.n_candidates = len(candidates)
        r = grid.comm_range_m + _RANGE_EPS
        cpos = np.asarray(candidates.vertices, dtype=np.float64).reshape(-1, 3) * grid.spacing_m
        self.to_backbone = _kernels.within_range(cpos, backbone.positions_m, r).astype(np.int64)
        among = _kernels.within_range(cpos, cpos, r)
        np.fill_diagonal(among, False)
        self.among = among.astype(np.int64)

    def augment(self, lap_initial: np.ndarray, selected: np.ndarray) -> np.ndarray:
        """``L_i`` plus the incidence outer products of the selected candidates.

        Equivalent to rebuilding the Laplacian of the augmented device set;
        new devices are appended in candidate order.
        """
        nb = self.n_backbone
        k = selected.shape[0]
        b = self.to_backbone[selected]  # (k, nb)
        c = self.among[np.ix_(selected, selected)]  # (k, k)
        out = np.zeros((nb + k, nb + k), dtype=np.int64)
        out[:nb, :nb] = lap_initial
        out[np.arange(nb), np.arange(nb)] += b.sum(axis=0)
        out[:nb, nb:] = -b.T
        out[nb:, :nb] = -b
        out[nb:, nb:] = -c
        out[np.arange(nb, nb + k), np.arange(nb, nb + k)] = b.sum(axis=1) + c.sum(axis=1)
        return out


def update_laplacian(
    lap_initial: np.ndarray,
    alpha: np.ndarray,
    candidates: CandidateSet,
    backbone: Backbone,
    grid: GridSpec,
    table: AugmentationTable | None = None,
) -> np.ndarray:
    """Laplacian of the backbone after placing relays where ``alpha`` is 1."""
    alpha = np.asarray(alpha)
    if alpha.shape != (len(candidates),):
        raise DomainError(f"alpha has shape {alpha.shape}, expected ({len(candidates)},)")
    n_b = len(backbone.devices)
    if np.shape(lap_initial) != (n_b, n_b):
        raise DomainError("initial Laplacian does not match the backbone size")
    if not np.all((alpha == 0) | (alpha == 1)):
        raise DomainError("alpha must be binary")
    if table is None:
        table = AugmentationTable(backbone, candidates, grid)
    return table.augment(np.asarray(lap_initial, dtype=np.int64), np.flatnonzero(alpha))
