"""Penalised placement fitness and the continuous-to-binary decision mapping."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, inf

import numpy as np

from .deployment import AugmentationTable, Backbone, CandidateSet, GridSpec
from .errors import CombinatorialBudgetError, DomainError
from .graph_core import average_distance, spectral_summary, wiener_spectral, TOL_EIG


@dataclass(frozen=True)
class Fitness:
    value: float
    mu_w: float
    lambda2_new: float
    penalty: float
    feasible: bool
    wiener: float = inf


@dataclass
class ObjectiveContext:
    """Everything needed to score a relay selection.

    ``lambda2_fprn`` is the connectivity floor enforced softly through
    ``penalty_beta``. ``lambda2_max``, when set, is a hard ceiling: selections
    whose algebraic connectivity exceeds it are discarded like disconnected
    ones.
    """

    backbone: Backbone
    candidates: CandidateSet
    grid: GridSpec
    n_sprn: int
    penalty_beta: float = 1.0
    lambda2_fprn: float = 0.5
    delta_mu: float = 0.1
    lambda2_max: float | None = None
    tol_eig: float = TOL_EIG
    l_initial: np.ndarray = field(init=False, repr=False)
    table: AugmentationTable = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.penalty_beta < 0:
            raise DomainError("penalty_beta must be >= 0")
        if not 0 < self.lambda2_fprn <= 1:
            raise DomainError("lambda2_fprn must lie in (0, 1]")
        if self.lambda2_max is not None and self.lambda2_max < self.lambda2_fprn:
            raise DomainError("lambda2_max must not be below lambda2_fprn")
        if not 0 <= self.n_sprn <= len(self.candidates):
            raise DomainError(
                f"n_sprn={self.n_sprn} outside [0, {len(self.candidates)}]"
            )
        self.l_initial = self.backbone.laplacian()
        self.table = AugmentationTable(self.backbone, self.candidates, self.grid)

    @property
    def n_c(self) -> int:
        return len(self.candidates)

    def selected_vertices(self, alpha: np.ndarray) -> list:
        return [self.candidates.vertices[i] for i in np.flatnonzero(alpha)]


def evaluate(alpha, ctx: ObjectiveContext) -> Fitness:
    """Score a binary selection: average distance plus connectivity penalty.

    Disconnected augmented backbones (and, with a ceiling configured,
    over-connected ones) get ``value = inf`` and ``feasible = False``.
    """
    alpha = np.asarray(alpha)
    if alpha.shape != (ctx.n_c,):
        raise DomainError(f"alpha has shape {alpha.shape}, expected ({ctx.n_c},)")
    if not np.all((alpha == 0) | (alpha == 1)):
        raise DomainError("alpha must be binary; run repair first")
    if int(alpha.sum()) != ctx.n_sprn:
        raise DomainError(f"alpha selects {int(alpha.sum())} sites, expected {ctx.n_sprn}")
    return _evaluate_selected(np.flatnonzero(alpha), ctx)


def _evaluate_selected(selected: np.ndarray, ctx: ObjectiveContext) -> Fitness:
    lap = ctx.table.augment(ctx.l_initial, selected)
    summary = spectral_summary(lap, ctx.tol_eig)
    lam2 = summary.fiedler
    if not summary.connected or summary.n < 2:
        return Fitness(inf, inf, lam2, 0.0, False)
    w = wiener_spectral(summary)
    mu = average_distance(w, summary.n, ctx.delta_mu)
    penalty = ctx.penalty_beta * max(0.0, ctx.lambda2_fprn - lam2)
    if ctx.lambda2_max is not None and lam2 > ctx.lambda2_max:
        return Fitness(inf, mu, lam2, penalty, False, w)
    return Fitness(mu + penalty, mu, lam2, penalty, True, w)


def repair(raw, n_sprn: int) -> np.ndarray:
    """Binary vector with ones at the ``n_sprn`` largest entries of ``raw``.

    Ties go to the lower index.
    """
    raw = np.asarray(raw, dtype=np.float64)
    if not 0 <= n_sprn <= raw.shape[0]:
        raise DomainError(f"cannot select {n_sprn} of {raw.shape[0]} sites")
    bits = np.zeros(raw.shape[0], dtype=np.int8)
    bits[np.argsort(-raw, kind="stable")[:n_sprn]] = 1
    return bits


def exhaustive_best(ctx: ObjectiveContext, budget: int = 10**6) -> tuple[np.ndarray, Fitness]:
    """Global optimum by enumerating every ``n_sprn``-subset of candidates."""
    total = comb(ctx.n_c, ctx.n_sprn)
    if total > budget:
        raise CombinatorialBudgetError(
            f"C({ctx.n_c}, {ctx.n_sprn}) = {total} subsets exceeds budget {budget}"
        )
    best_sel, best_fit = None, None
    for sel in combinations(range(ctx.n_c), ctx.n_sprn):
        fit = _evaluate_selected(np.asarray(sel, dtype=np.int64), ctx)
        if best_fit is None or fit.value < best_fit.value:
            best_sel, best_fit = sel, fit
    alpha = np.zeros(ctx.n_c, dtype=np.int8)
    alpha[list(best_sel)] = 1
    return alpha, best_fit


class PlacementProblem:
    """Continuous view of the placement objective for population optimizers.

    A position in ``[0, 1]^n_c`` is mapped to a selection by :func:`repair`
    and scored with :func:`evaluate`. Scores are memoised per selection.
    """

    def __init__(self, ctx: ObjectiveContext) -> None:
        self.ctx = ctx
        self.dim = ctx.n_c
        self._cache: dict[bytes, Fitness] = {}

    def decode(self, x) -> np.ndarray:
        return repair(x, self.ctx.n_sprn)

    def fitness(self, x) -> Fitness:
        alpha = self.decode(x)
        key = np.packbits(alpha).tobytes()
        fit = self._cache.get(key)
        if fit is None:
            fit = _evaluate_selected(np.flatnonzero(alpha), self.ctx)
            self._cache[key] = fit
        return fit

    def __call__(self, x) -> float:
        return self.fitness(x).value
