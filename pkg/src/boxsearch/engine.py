"""Exact expected payoff of searcher policies and search sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .model import (GameVariant, HiderMixed, InfoState, InvalidInstance, PolicyViolation,
                    as_costs, check_allocation, clairvoyant_cost,
                    enumerate_allocations)
from .strategies import NormalStrategy, check_sequence


@dataclass
class EvalResult:
    expected_payoff: object
    node_count: int
    breakdown: dict = field(default_factory=dict)


def _prob_sum_ok(total) -> bool:
    if isinstance(total, float):
        return abs(total - 1) <= 1e-9
    return total == 1


def evaluate(policy, x: Sequence[int], costs: Sequence, variant="multi-cost") -> EvalResult:
    """Expected payoff of ``policy`` against the pure allocation ``x``.

    Outcomes are deterministic given ``x``: opening box i yields a ball iff
    fewer than x_i have been taken from it. Cost mode charges c_i per open,
    regret mode only on opens that reveal an empty box.
    """
    variant = GameVariant.parse(variant)
    costs = as_costs(costs)
    n = len(costs)
    x = check_allocation(x, n, sum(x), variant.look_mode)
    k = sum(x)
    single, regret = variant.single, variant.regret
    memo = {}

    def value(info, state):
        key = (info, state)
        if key in memo:
            return memo[key]
        if info.total_found == k:
            memo[key] = 0
            return 0
        branches = policy.act(info, state)
        total_p = sum(p for p, _, _ in branches)
        if not _prob_sum_ok(total_p):
            raise PolicyViolation(f"{policy!r}: probabilities sum to {total_p} at {info}")
        acc = 0
        for p, box, st in branches:
            if p == 0:
                continue
            if p < 0 or box is None or not 0 <= box < n or info.dead[box]:
                raise PolicyViolation(f"{policy!r} opened inadmissible box {box} at {info}")
            ball = info.found[box] < x[box]
            nxt = info.after(box, ball, single)
            charge = 0 if (ball and regret) else costs[box]
            acc += p * (charge + value(nxt, policy.observe(st, box, ball, nxt)))
        memo[key] = acc
        return acc

    result = value(InfoState.initial(n), policy.start())
    return EvalResult(result, len(memo), {x: result})


def evaluate_mixed(policy, hider: HiderMixed, costs: Sequence, variant="multi-cost") -> EvalResult:
    variant = GameVariant.parse(variant)
    total, nodes, breakdown = 0, 0, {}
    for x, p in hider.items():
        res = evaluate(policy, x, costs, variant)
        breakdown[x] = res.expected_payoff
        nodes += res.node_count
        total += p * res.expected_payoff
    return EvalResult(total, nodes, breakdown)


def evaluate_all(policy, costs: Sequence, k: int, variant="multi-cost") -> EvalResult:
    """Payoff against every pure allocation; ``expected_payoff`` is the worst case."""
    variant = GameVariant.parse(variant)
    breakdown, nodes = {}, 0
    for x in enumerate_allocations(len(costs), k, variant.look_mode):
        res = evaluate(policy, x, costs, variant)
        breakdown[x] = res.expected_payoff
        nodes += res.node_count
    return EvalResult(max(breakdown.values()), nodes, breakdown)


def sequence_regret(seq: Sequence[int], x: Sequence[int], costs: Sequence) -> object:
    """Regret of following ``seq`` (0-based boxes) against ``x``, skipping dead boxes."""
    costs = as_costs(costs)
    n = len(costs)
    k = sum(x)
    # a length-n sequence is a single-look order; otherwise each box appears k times
    single = len(seq) == n
    check_sequence(seq, n, 1 if single else k, "single" if single else "multi")
    if single and any(v > 1 for v in x):
        raise InvalidInstance(f"single-look order used against multi-ball allocation {x}")
    left = list(x)
    dead = [False] * n
    found = 0
    regret = 0 * costs[0]
    for box in seq:
        if found == k:
            break
        if dead[box]:
            continue
        if left[box] > 0:
            left[box] -= 1
            found += 1
            if single:
                dead[box] = True
        else:
            dead[box] = True
            regret += costs[box]
    if found != k:
        raise InvalidInstance(f"sequence {seq} cannot find all balls of {x}")
    return regret


def normal_expected_regret(normal: NormalStrategy, x: Sequence[int], costs: Sequence):
    total = sum(p for _, p in normal.items())
    if not _prob_sum_ok(total):
        raise InvalidInstance(f"mixture probabilities sum to {total}")
    return sum(p * sequence_regret(seq, x, costs) for seq, p in normal.items())


def regret_identity_holds(policy, x, costs, look_mode="multi") -> bool:
    """cost - clairvoyant cost == regret for this policy and allocation."""
    cost = evaluate(policy, x, costs, GameVariant(look_mode, "cost")).expected_payoff
    regret = evaluate(policy, x, costs, GameVariant(look_mode, "regret")).expected_payoff
    diff = cost - clairvoyant_cost(costs, x) - regret
    return abs(diff) <= 1e-9 if isinstance(diff, float) else diff == 0


def simulate(policy, x: Sequence[int], costs: Sequence, variant, rng) -> object:
    """One sampled play of ``policy`` against ``x``; ``rng`` is a ``random.Random``."""
    variant = GameVariant.parse(variant)
    costs = as_costs(costs)
    k = sum(x)
    info, state = InfoState.initial(len(costs)), policy.start()
    total = 0 * costs[0]
    while info.total_found < k:
        branches = [(p, box, st) for p, box, st in policy.act(info, state) if p]
        u = rng.random() * float(sum(p for p, _, _ in branches))
        for p, box, st in branches:
            u -= float(p)
            if u < 0:
                break
        if info.dead[box]:
            raise PolicyViolation(f"{policy!r} opened inadmissible box {box} at {info}")
        ball = info.found[box] < x[box]
        if not (ball and variant.regret):
            total += costs[box]
        info = info.after(box, ball, variant.single)
        state = policy.observe(st, box, ball, info)
    return total
