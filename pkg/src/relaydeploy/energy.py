"""First-order radio energy model and lifetime-in-rounds accounting.

Energies are in joules, distances in meters, lifetimes in rounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DomainError
from .graph_core import BackboneGraph


@dataclass(frozen=True)
class EnergyParams:
    beta: float = 50e-9  # J/bit, reception
    eps1: float = 50e-9  # J/bit, transmitter electronics
    eps2: float = 10e-12  # J/bit/m^gamma, amplifier
    gamma: float = 4.8
    packet_bits: float = 512
    j_agg: float = 50e-7  # J per aggregated packet
    e_init: float = 15.4  # J per device
    t_rate: float = 100  # packets transmitted per round
    r_rate: float = 100  # packets received per round
    a_rate: float = 10  # packets aggregated per round

    def __post_init__(self) -> None:
        for name in ("beta", "eps1", "eps2", "packet_bits", "j_agg", "e_init",
                     "t_rate", "r_rate", "a_rate"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative")
        if self.gamma < 2:
            raise DomainError("path-loss exponent gamma must be >= 2")

    def at_traffic(self, packets_per_round: float) -> "EnergyParams":
        """Same radio with transmit and receive rates set to one load level."""
        return replace(self, t_rate=packets_per_round, r_rate=packets_per_round)


def j_rx(p: EnergyParams) -> float:
    return p.packet_bits * p.beta


def j_tx(p: EnergyParams, d: float) -> float:
    if d < 0:
        raise DomainError("distance must be non-negative")
    return p.packet_bits * (p.eps1 + p.eps2 * d**p.gamma)


def remaining_energy(p: EnergyParams, d: float) -> float:
    """Energy left after one round; negative means the battery is exhausted."""
    return p.e_init - p.t_rate * j_tx(p, d) - p.r_rate * j_rx(p) - p.a_rate * p.j_agg


def node_energy_per_round(p: EnergyParams, k: float, mu_w: float) -> float:
    """Per-round draw of a relay that forwards ``k`` times the base traffic.

    ``mu_w`` is the average internode distance in meters.
    """
    if k < 0 or mu_w < 0:
        raise DomainError("k and mu_w must be non-negative")
    return k * p.t_rate * j_tx(p, mu_w) + k * p.r_rate * j_rx(p) + p.a_rate * p.j_agg


def initial_rounds(b1: float, fprn_e_p: Sequence[float]) -> float:
    total = float(np.sum(fprn_e_p))
    if total <= 0:
        raise DomainError("first-phase relays consume no energy; lifetime undefined")
    return b1 / total


def total_lifetime(b1: float, b2: float, all_e_p: Sequence[float]) -> float:
    total = float(np.sum(all_e_p))
    if total <= 0:
        raise DomainError("relays consume no energy; lifetime undefined")
    return (b1 + b2) / total


def lifetime_additive(i_rounds: float, alpha, e_r: float) -> float:
    """Initial rounds plus ``e_r`` extra rounds per placed second-phase relay."""
    if e_r < 0:
        raise DomainError("extra rounds per relay must be non-negative")
    return i_rounds + float(np.sum(alpha)) * e_r


def connection_probability(d: float, varpi: float, mu_att: float, gamma: float) -> float:
    """Probability that two nodes ``d`` meters apart can communicate."""
    if not 0 <= varpi <= 1 or mu_att < 0 or d < 0:
        raise DomainError("need varpi in [0, 1], mu_att >= 0, d >= 0")
    return varpi * math.exp(-mu_att * d**gamma)


def relay_multipliers(
    g: BackboneGraph, bs: int, chs: Sequence[int], relays: Sequence[int]
) -> np.ndarray:
    """Load factor ``k`` for each relay in ``relays``.

    ``k = 1 +`` the number of CHs whose BS-bound shortest path crosses the
    relay. Paths come from one BFS tree rooted at the BS in which every node
    keeps its lowest-index parent, so the count is deterministic.
    """
    n = g.node_count
    parent = np.full(n, -1, dtype=np.int64)
    level = np.full(n, -1, dtype=np.int64)
    level[bs] = 0
    frontier = [bs]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if level[v] < 0:
                    level[v] = level[u] + 1
                    parent[v] = u
                    nxt.append(v)
                elif level[v] == level[u] + 1 and u < parent[v]:
                    parent[v] = u
        frontier = sorted(nxt)
    crossings = np.zeros(n, dtype=np.int64)
    for c in chs:
        if level[c] < 0:
            continue
        u = parent[c]
        while u >= 0 and u != bs:
            crossings[u] += 1
            u = parent[u]
    return 1.0 + crossings[np.asarray(relays, dtype=np.int64)].astype(np.float64)


@dataclass(frozen=True)
class LifetimeReport:
    i_rounds: float
    t_rounds: float
    per_node_e_p: tuple
    b1: float
    b2: float
    e_r: float
    mu_w_m: float

    @property
    def mean_e_p(self) -> float:
        return float(np.mean(self.per_node_e_p)) if self.per_node_e_p else 0.0


def lifetime_report(
    p: EnergyParams,
    *,
    n_ch: int,
    n_fprn: int,
    n_sprn: int,
    fprn_k: Sequence[float],
    fprn_mu_w_m: float,
    all_k: Sequence[float],
    mu_w_m: float,
) -> LifetimeReport:
    """Initial and total lifetime for a two-phase deployment.

    The first-phase budget counts the CHs and first-phase relays; each
    second-phase relay adds one more battery.
    """
    b1 = (n_fprn + n_ch) * p.e_init
    b2 = n_sprn * p.e_init
    fprn_e = [node_energy_per_round(p, k, fprn_mu_w_m) for k in fprn_k]
    all_e = [node_energy_per_round(p, k, mu_w_m) for k in all_k]
    i_r = initial_rounds(b1, fprn_e)
    t_r = total_lifetime(b1, b2, all_e)
    e_r = (t_r - i_r) / n_sprn if n_sprn else 0.0
    return LifetimeReport(i_r, t_r, tuple(all_e), b1, b2, e_r, mu_w_m)
