import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxsearch import (InvalidInstance, NormalStrategy, best_response, evaluate_all,
                       hider_equalizing_multi, hider_equalizing_single, hider_prefill_single,
                       hider_restricted_equalizing, hider_set_aside_n2, searcher_equal_cost,
                       searcher_multi_regret, searcher_n2_cost, searcher_normal_k1,
                       searcher_normal_k2, searcher_random, searcher_single_regret_full,
                       searcher_uniform_adaptive, value_equal_cost, value_multi_regret)
from boxsearch.model import InfoState, enumerate_allocations
from boxsearch.strategies import (ending_pattern, n2_cost_q_weights, normal_k2_pattern,
                                  normal_k2_strategy, single_q_weights)
from boxsearch.values import canonical_order, cutoff_b_multi_n2, cutoff_b_single
from helpers import cost_lists, rational


def test_equalizer_examples():
    h = hider_equalizing_multi((2, 1), 1)
    assert h[(1, 0)] == Fraction(2, 3) and h[(0, 1)] == Fraction(1, 3)
    uniform = hider_equalizing_multi((5, 5, 5), 2)
    assert set(p for _, p in uniform.items()) == {Fraction(1, 6)}
    assert hider_equalizing_multi((7,), 3).support() == [(3,)]
    single = hider_equalizing_single((1, 2, 4), 2)
    # weight of x is proportional to prod c_i^(x_i - 1) = 1 / (cost of the empty box)
    assert single[(1, 1, 0)] / single[(0, 1, 1)] == Fraction(1, 4)


@given(cost_lists(1, 4), st.integers(1, 3))
def test_equalizers_are_distributions(costs, k):
    for h in [hider_equalizing_multi(costs, k)] + ([hider_equalizing_single(costs, k)] if k <= len(costs) else []):
        assert sum(p for _, p in h.items()) == 1
        assert all(p > 0 for _, p in h.items())


def test_restricted_equalizer():
    h = hider_restricted_equalizing((10, 1), 2, [(2, 0), (1, 1)])
    assert h[(2, 0)] == Fraction(10, 11)
    with pytest.raises(InvalidInstance):
        hider_restricted_equalizing((10, 1), 2, [(3, 0)])
    with pytest.raises(InvalidInstance):
        hider_restricted_equalizing((10, 1), 2, [])


@given(rational(), rational(), st.integers(1, 5))
def test_q_weights_monotone_distribution(a, b, k):
    c1, c2 = max(a, b), min(a, b)
    bstar = cutoff_b_multi_n2(c1, c2, k).b
    q = n2_cost_q_weights(c1, c2, bstar)
    assert sum(q) == 1 and all(w >= 0 for w in q)
    assert all(x <= y for x, y in zip(q, q[1:]))


@given(cost_lists(2, 6))
def test_single_q_weights(costs):
    ordered, _ = canonical_order(costs)
    b = cutoff_b_single(ordered).b
    q = single_q_weights(ordered[:b])
    assert sum(q) == 1 and all(w >= 0 for w in q)


@settings(max_examples=30, deadline=None)
@given(rational(), rational(), st.integers(1, 4))
def test_n2_pair_is_optimal(c1, c2, k):
    value = cutoff_b_multi_n2(max(c1, c2), min(c1, c2), k).value
    worst = evaluate_all(searcher_n2_cost(c1, c2, k), (c1, c2), k, "multi-cost").expected_payoff
    guard, _ = best_response(hider_set_aside_n2(c1, c2, k), (c1, c2), "multi-cost")
    assert worst == value == guard


@settings(max_examples=30, deadline=None)
@given(cost_lists(1, 4), st.integers(1, 3))
def test_multi_regret_searcher_guarantees_value(costs, k):
    worst = evaluate_all(searcher_multi_regret(costs, k), costs, k, "multi-regret").expected_payoff
    assert worst == value_multi_regret(costs, k)


@settings(max_examples=30, deadline=None)
@given(cost_lists(2, 5))
def test_single_regret_pair_is_optimal(costs):
    n = len(costs)
    value = cutoff_b_single(canonical_order(costs)[0]).value
    worst = evaluate_all(searcher_single_regret_full(costs), costs, n - 1, "single-regret").expected_payoff
    guard, _ = best_response(hider_prefill_single(costs), costs, "single-regret")
    assert worst == value == guard


def test_prefill_hider_example():
    h = hider_prefill_single((100, 100, 1))
    assert h.support() == [(0, 1, 1), (1, 0, 1)]
    reordered = hider_prefill_single((1, 100, 100))
    assert reordered.support() == [(1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(1, 4)])
def test_equal_cost_searcher(n, k):
    costs = (Fraction(2),) * n
    res = evaluate_all(searcher_equal_cost(n, k), costs, k, "multi-cost")
    assert res.expected_payoff == 2 * value_equal_cost(n, k)
    assert set(res.breakdown.values()) == {res.expected_payoff}


@given(cost_lists(1, 5))
def test_normal_k1(costs):
    normal = searcher_normal_k1(costs)
    n, total = len(costs), sum(costs)
    ends = {}
    for seq, p in normal.items():
        ends[seq[-1]] = ends.get(seq[-1], 0) + p
    assert ends == {j: c / total for j, c in enumerate(costs)}
    if n <= 4:
        worst = evaluate_all(normal.policy(), costs, 1, "multi-regret").expected_payoff
        assert worst == value_multi_regret(costs, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k2_patterns_end_with_their_pattern(n):
    for y in enumerate_allocations(n, 2):
        mix = normal_k2_pattern(n, y)
        assert sum(p for _, p in mix.items()) == 1
        assert all(ending_pattern(s, n, 2) == y for s, _ in mix.items())


@settings(max_examples=15, deadline=None)
@given(cost_lists(2, 4))
def test_normal_k2_guarantees_value(costs):
    worst = evaluate_all(searcher_normal_k2(costs), costs, 2, "multi-regret").expected_payoff
    assert worst == value_multi_regret(costs, 2)
    assert sum(p for _, p in normal_k2_strategy(costs).items()) == 1


def test_normal_strategy_validation():
    with pytest.raises(InvalidInstance):
        NormalStrategy({(0, 1, 1): Fraction(1)})
    with pytest.raises(InvalidInstance):
        NormalStrategy({(0, 0, 1, 1): Fraction(1, 2)})
    with pytest.raises(InvalidInstance):
        NormalStrategy({})
    s = NormalStrategy({(0, 1, 0, 1): Fraction(1, 2), (1, 0, 1, 0): Fraction(1, 2)})
    assert (s.n, s.k) == (2, 2)
    assert s.to_json()["sequences"][0] == [1, 2, 1, 2]


def test_random_policy_is_reproducible_and_admissible():
    info = InfoState((1, 0, 0), (False, True, False))
    a = searcher_random(5).act(info, None)
    assert a == searcher_random(5).act(info, None)
    assert sum(p for p, _, _ in a) == 1
    assert all(box in (0, 2) for _, box, _ in a)


@pytest.mark.parametrize("build", [
    lambda c, k: searcher_uniform_adaptive(len(c), k),
    lambda c, k: searcher_equal_cost(len(c), k),
    searcher_multi_regret,
    lambda c, k: searcher_random(11, memory=True),
])
@pytest.mark.parametrize("variant", ["multi-cost", "single-regret"])
def test_policies_stay_admissible(build, variant):
    rng = random.Random(0)
    for n in range(1, 5):
        for k in range(1, 4):
            if variant.startswith("single") and k > n:
                continue
            costs = tuple(Fraction(rng.randint(1, 9)) for _ in range(n))
            # evaluate_all raises PolicyViolation on any inadmissible move
            evaluate_all(build(costs, k), costs, k, variant)


def test_constructors_reject_bad_instances():
    with pytest.raises(InvalidInstance):
        searcher_equal_cost(0, 1)
    with pytest.raises(InvalidInstance):
        searcher_single_regret_full((3,))
