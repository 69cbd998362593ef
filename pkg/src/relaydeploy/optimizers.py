"""DE, GSA and ABC population optimizers over the box ``[0, 1]^D``.

An objective is any object with a ``dim`` attribute that maps a position
vector to a float to be minimised (:class:`~relaydeploy.objective.PlacementProblem`
is the one used for relay placement). All randomness comes from one seeded
``numpy.random.Generator`` per run, so a fixed seed reproduces a run exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import DomainError
from .objective import ObjectiveContext, PlacementProblem

KINDS = ("DE", "GSA", "ABC")


@dataclass(frozen=True)
class DEParams:
    mp: float = 0.9
    cp: float = 0.9
    f: float = 0.5


@dataclass(frozen=True)
class GSAParams:
    alpha_g: float = 7.0
    lambda_g: float = 6.0  # recorded only; no update rule consumes it
    epsilon_g: float = 1e-5
    g0: float = 1000.0
    kbest: int = 4


@dataclass(frozen=True)
class ABCParams:
    limit: int | None = None  # None -> problem dimension
    onlooker_fraction: float = 0.5


@dataclass(frozen=True)
class OptimizerConfig:
    population_size: int = 50
    max_generations: int = 200
    seed: int = 0
    de: DEParams = field(default_factory=DEParams)
    gsa: GSAParams = field(default_factory=GSAParams)
    abc: ABCParams = field(default_factory=ABCParams)

    def __post_init__(self) -> None:
        if self.population_size < 4:
            raise DomainError("population_size must be at least 4")
        if self.max_generations < 0:
            raise DomainError("max_generations must be >= 0")
        if not (0 <= self.de.mp <= 1 and 0 <= self.de.cp <= 1):
            raise DomainError("DE mp and cp must lie in [0, 1]")
        if self.de.f <= 0:
            raise DomainError("DE factor f must be positive")
        if self.gsa.g0 <= 0 or self.gsa.kbest < 1:
            raise DomainError("GSA needs g0 > 0 and kbest >= 1")
        if not 0 < self.abc.onlooker_fraction < 1:
            raise DomainError("ABC onlooker_fraction must lie in (0, 1)")

    def with_seed(self, seed: int) -> "OptimizerConfig":
        return replace(self, seed=seed)


@dataclass
class Population:
    positions: np.ndarray
    fitness: np.ndarray
    velocity: np.ndarray | None = None
    trials: np.ndarray | None = None

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    def best_index(self) -> int:
        return int(np.argmin(self.fitness))


@dataclass
class RunTrace:
    kind: str
    seed: int
    best_fitness_per_generation: list
    best_position: np.ndarray
    best_fitness: float
    evaluations: int
    final_alpha: np.ndarray | None = None


class _Counted:
    def __init__(self, objective) -> None:
        self.objective = objective
        self.dim = objective.dim
        self.calls = 0

    def __call__(self, x) -> float:
        self.calls += 1
        return float(self.objective(x))


def _evaluate_all(objective, positions: np.ndarray) -> np.ndarray:
    return np.array([objective(x) for x in positions], dtype=np.float64)


# ---------------------------------------------------------------------------
# Differential evolution
# ---------------------------------------------------------------------------


def de_mutant(x_i, x_best, x_r1, x_r2, f: float) -> np.ndarray:
    """Mutant vector pulled toward the best and perturbed by one difference."""
    return x_i + f * (x_best - x_i) + f * (x_r1 - x_r2)


def de_generation(pop: Population, cfg: OptimizerConfig, objective, rng) -> Population:
    """One DE sweep with immediate replacement.

    Individuals are visited in order; an accepted trial replaces its parent at
    once and can serve as best or donor for the rest of the sweep.
    """
    n, d = pop.positions.shape
    p = cfg.de
    x = pop.positions.copy()
    fit = pop.fitness.copy()
    idx = np.arange(n)
    for i in range(n):
        if rng.random() >= p.mp:
            continue
        best = int(np.argmin(fit))
        r1, r2 = rng.choice(idx[idx != i], size=2, replace=False)
        v = de_mutant(x[i], x[best], x[r1], x[r2], p.f)
        # binomial crossover with one guaranteed mutant coordinate
        take = rng.random(d) < p.cp
        take[rng.integers(d)] = True
        trial = np.clip(np.where(take, v, x[i]), 0.0, 1.0)
        ft = objective(trial)
        if ft <= fit[i]:
            x[i] = trial
            fit[i] = ft
    return Population(x, fit)


# ---------------------------------------------------------------------------
# Gravitational search
# ---------------------------------------------------------------------------


def gravitational_constant(t: float, t_max: float, g0: float, alpha_g: float) -> float:
    return g0 * math.exp(-alpha_g * t / t_max) if t_max > 0 else g0


def gsa_masses(fitness: np.ndarray) -> np.ndarray:
    """Normalised masses: best agent heaviest, worst weightless.

    Infeasible (infinite) agents get zero mass; if all agents tie, or none is
    feasible, masses are uniform.
    """
    fitness = np.asarray(fitness, dtype=np.float64)
    n = fitness.shape[0]
    finite = np.isfinite(fitness)
    if not finite.any():
        return np.full(n, 1.0 / n)
    best = fitness[finite].min()
    worst = fitness[finite].max()
    if worst == best:
        m = finite.astype(np.float64)
        if finite.all():
            return np.full(n, 1.0 / n)
    else:
        m = np.where(finite, (worst - fitness) / (worst - best), 0.0)
        if not finite.all():
            # the worst feasible agent still outweighs infeasible ones
            m = np.where(finite, m + 1e-12, 0.0)
    return m / m.sum()


def gsa_generation(
    pop: Population, cfg: OptimizerConfig, objective, t: int, t_max: int, rng
) -> Population:
    n, d = pop.positions.shape
    p = cfg.gsa
    g = gravitational_constant(t, t_max, p.g0, p.alpha_g)
    mass = gsa_masses(pop.fitness)
    k = min(p.kbest, n)
    kbest = np.argsort(-mass, kind="stable")[:k].astype(np.int64)
    weights = rng.random((n, k))
    # acceleration = force / own mass; the own mass cancels analytically
    acc = _kernels.gsa_acceleration(pop.positions, mass, kbest, g, p.epsilon_g, weights)
    vel = pop.velocity if pop.velocity is not None else np.zeros((n, d))
    vel = rng.random((n, 1)) * vel + acc
    x = np.clip(pop.positions + vel, 0.0, 1.0)
    return Population(x, _evaluate_all(objective, x), velocity=vel)


# ---------------------------------------------------------------------------
# Artificial bee colony
# ---------------------------------------------------------------------------


def abc_candidate(x_i: np.ndarray, x_k: np.ndarray, phi: float) -> np.ndarray:
    """Neighbour of ``x_i`` along its difference to partner ``x_k``."""
    return x_i + phi * (x_i - x_k)


def _abc_quality(fitness: np.ndarray) -> np.ndarray:
    q = np.where(fitness >= 0, 1.0 / (1.0 + np.abs(fitness)), 1.0 + np.abs(fitness))
    return np.where(np.isfinite(fitness), q, 0.0)


def _abc_try(pop: Population, i: int, objective, rng) -> None:
    n = pop.size
    k = int(rng.integers(n - 1))
    k += k >= i
    phi = rng.uniform(-1.0, 1.0)
    cand = np.clip(abc_candidate(pop.positions[i], pop.positions[k], phi), 0.0, 1.0)
    fc = objective(cand)
    if fc <= pop.fitness[i]:
        improved = fc < pop.fitness[i]
        pop.positions[i] = cand
        pop.fitness[i] = fc
        pop.trials[i] = 0 if improved else pop.trials[i] + 1
    else:
        pop.trials[i] += 1


def abc_sources(population_size: int, onlooker_fraction: float) -> tuple[int, int]:
    """Split a colony into (food sources, onlookers)."""
    onlookers = max(1, int(round(population_size * onlooker_fraction)))
    sources = max(2, population_size - onlookers)
    return sources, onlookers


def abc_generation(pop: Population, cfg: OptimizerConfig, objective, rng) -> Population:
    pop = Population(pop.positions.copy(), pop.fitness.copy(), trials=pop.trials.copy())
    n, d = pop.positions.shape
    limit = cfg.abc.limit if cfg.abc.limit is not None else d
    _, onlookers = abc_sources(cfg.population_size, cfg.abc.onlooker_fraction)

    for i in range(n):
        _abc_try(pop, i, objective, rng)

    q = _abc_quality(pop.fitness)
    prob = q / q.sum() if q.sum() > 0 else np.full(n, 1.0 / n)
    for i in rng.choice(n, size=onlookers, p=prob):
        _abc_try(pop, int(i), objective, rng)

    s = int(np.argmax(pop.trials))
    if pop.trials[s] >= limit:
        pop.positions[s] = rng.random(d)
        pop.fitness[s] = objective(pop.positions[s])
        pop.trials[s] = 0
    return pop


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def initial_population(objective, size: int, rng) -> Population:
    x = rng.random((size, objective.dim))
    return Population(x, _evaluate_all(objective, x))


def optimize(problem, cfg: OptimizerConfig, kind: str) -> RunTrace:
    """Run one optimizer for ``cfg.max_generations`` generations.

    ``problem`` is either an :class:`ObjectiveContext` (relay placement) or any
    objective with ``dim`` and ``__call__``. Entry ``g`` of the returned trace
    is the best value seen up to and including generation ``g``; entry 0 is
    the initial population.
    """
    kind = kind.upper()
    if kind not in KINDS:
        raise DomainError(f"unknown optimizer {kind!r}; choose from {KINDS}")
    if isinstance(problem, ObjectiveContext):
        problem = PlacementProblem(problem)
    objective = _Counted(problem)
    rng = np.random.default_rng(cfg.seed)

    if kind == "ABC":
        sources, _ = abc_sources(cfg.population_size, cfg.abc.onlooker_fraction)
        pop = initial_population(objective, sources, rng)
        pop.trials = np.zeros(sources, dtype=np.int64)
    else:
        pop = initial_population(objective, cfg.population_size, rng)
        if kind == "GSA":
            pop.velocity = np.zeros_like(pop.positions)

    b = pop.best_index()
    best_x, best_f = pop.positions[b].copy(), float(pop.fitness[b])
    history = [best_f]
    for t in range(cfg.max_generations):
        if kind == "DE":
            pop = de_generation(pop, cfg, objective, rng)
        elif kind == "GSA":
            pop = gsa_generation(pop, cfg, objective, t, cfg.max_generations, rng)
        else:
            pop = abc_generation(pop, cfg, objective, rng)
        b = pop.best_index()
        if pop.fitness[b] < best_f:
            best_x, best_f = pop.positions[b].copy(), float(pop.fitness[b])
        history.append(best_f)

    alpha = problem.decode(best_x) if isinstance(problem, PlacementProblem) else None
    return RunTrace(kind, cfg.seed, history, best_x, best_f, objective.calls, alpha)
