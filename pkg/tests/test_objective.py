from itertools import combinations
from math import comb, inf

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaydeploy.errors import CombinatorialBudgetError, DomainError
from relaydeploy.graph_core import average_distance, spectral_summary, wiener_spectral
from relaydeploy.objective import ObjectiveContext, PlacementProblem, evaluate, exhaustive_best, repair

from conftest import SMALL_GRID


def test_repair_picks_largest_with_low_index_ties():
    np.testing.assert_array_equal(repair([0.1, 0.9, 0.5, 0.9], 2), [0, 1, 0, 1])
    np.testing.assert_array_equal(repair([1, 1, 1, 1], 2), [1, 1, 0, 0])
    np.testing.assert_array_equal(repair([0.3, 0.2], 0), [0, 0])
    with pytest.raises(DomainError):
        repair([0.1], 2)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=40), st.data())
def test_repair_cardinality(raw, data):
    k = data.draw(st.integers(0, len(raw)))
    bits = repair(raw, k)
    assert bits.sum() == k
    assert set(np.unique(bits)) <= {0, 1}
    if 0 < k < len(raw):
        assert min(np.asarray(raw)[bits == 1]) >= max(np.asarray(raw)[bits == 0])


def test_evaluate_matches_direct_computation(eight_choose_two):
    ctx = eight_choose_two
    alpha = np.array([1, 1, 0, 0, 0, 0, 0, 0], dtype=np.int8)
    fit = evaluate(alpha, ctx)
    aug = ctx.backbone.augmented(ctx.selected_vertices(alpha))
    s = spectral_summary(aug.laplacian())
    mu = average_distance(wiener_spectral(s), s.n, 0.1)
    assert fit.lambda2_new == pytest.approx(s.fiedler)
    assert fit.mu_w == pytest.approx(mu)
    assert fit.value == pytest.approx(mu + max(0.0, 0.5 - s.fiedler))
    assert fit.feasible


def test_evaluate_validates(eight_choose_two):
    with pytest.raises(DomainError):
        evaluate(np.zeros(7), eight_choose_two)
    with pytest.raises(DomainError):
        evaluate(np.full(8, 0.5), eight_choose_two)
    with pytest.raises(DomainError):
        evaluate(np.ones(8), eight_choose_two)


def test_disconnected_gets_death_penalty(small_backbone):
    # a candidate far from everything cannot link in
    from relaydeploy.deployment import CandidateSet

    far = CandidateSet(((5, 5, 1), (5, 0, 0)))
    assert not any(SMALL_GRID.in_range(v, far.vertices[0]) for v in small_backbone.vertices)
    ctx = ObjectiveContext(small_backbone, far, SMALL_GRID, 1)
    fit = evaluate(np.array([1, 0]), ctx)
    assert fit.value == inf and not fit.feasible


def test_ceiling_discards_overconnected(small_backbone, eight_choose_two):
    base = eight_choose_two
    capped = ObjectiveContext(small_backbone, base.candidates, SMALL_GRID, 2, lambda2_max=0.5)
    for sel in combinations(range(8), 2):
        alpha = np.isin(np.arange(8), sel).astype(np.int8)
        f0, f1 = evaluate(alpha, base), evaluate(alpha, capped)
        if f0.lambda2_new > 0.5:
            assert f1.value == inf and not f1.feasible
        else:
            assert f1.value == f0.value


def test_context_validation(small_backbone, eight_choose_two):
    cs = eight_choose_two.candidates
    with pytest.raises(DomainError):
        ObjectiveContext(small_backbone, cs, SMALL_GRID, 9)
    with pytest.raises(DomainError):
        ObjectiveContext(small_backbone, cs, SMALL_GRID, 2, penalty_beta=-1)
    with pytest.raises(DomainError):
        ObjectiveContext(small_backbone, cs, SMALL_GRID, 2, lambda2_max=0.1)


def test_exhaustive_best_is_minimum(eight_choose_two):
    ctx = eight_choose_two
    alpha, best = exhaustive_best(ctx)
    values = [
        evaluate(np.isin(np.arange(8), sel).astype(np.int8), ctx).value
        for sel in combinations(range(8), 2)
    ]
    assert len(values) == comb(8, 2)
    assert best.value == min(values)
    assert evaluate(alpha, ctx).value == best.value


def test_exhaustive_budget(medium_ctx):
    with pytest.raises(CombinatorialBudgetError):
        exhaustive_best(medium_ctx, budget=100)


def test_placement_problem_memoises(eight_choose_two):
    prob = PlacementProblem(eight_choose_two)
    x = np.linspace(0, 1, 8)
    assert prob(x) == prob(x[::-1][::-1])
    assert len(prob._cache) == 1
    np.testing.assert_array_equal(prob.decode(x), [0, 0, 0, 0, 0, 0, 1, 1])


def test_penalty_arithmetic(eight_choose_two):
    ctx = eight_choose_two
    alpha = np.zeros(8, dtype=np.int8)
    alpha[:2] = 1
    fit = evaluate(alpha, ctx)
    assert fit.penalty == pytest.approx(ctx.penalty_beta * max(0.0, 0.5 - fit.lambda2_new))
