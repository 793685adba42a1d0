"""JSON forms of strategies.

Constructed searchers are stored by name and parameters and rebuilt on
load; normal strategies, decision trees and hider mixtures are stored
explicitly. Box numbers in JSON are 1-based.
"""

from __future__ import annotations

from .model import HiderMixed, InfoState, InvalidInstance, as_costs, format_number, to_number
from .solver import DecisionTreePolicy
from .strategies import (NormalStrategy, hider_equalizing_multi, hider_equalizing_single,
                         hider_prefill_single, hider_set_aside_n2, normal_k2_strategy,
                         searcher_equal_cost, searcher_multi_regret, searcher_n2_cost,
                         searcher_normal_k1, searcher_random, searcher_single_regret_full,
                         searcher_uniform_adaptive)


def _need(cond, msg):
    if not cond:
        raise InvalidInstance(msg)


def _n2(costs, k):
    _need(len(costs) == 2, "n2-cost needs exactly two boxes")
    return searcher_n2_cost(costs[0], costs[1], k)


def _single_full(costs, k):
    _need(k == len(costs) - 1, "single-regret searcher needs k = n-1")
    return searcher_single_regret_full(costs)


def _normal_k1(costs, k):
    _need(k == 1, "normal-k1 needs k = 1")
    return searcher_normal_k1(costs)


def _normal_k2(costs, k):
    _need(k == 2, "normal-k2 needs k = 2")
    return normal_k2_strategy(costs)


SEARCHERS = {
    "uniform-adaptive": lambda costs, k: searcher_uniform_adaptive(len(costs), k),
    "equal-cost": lambda costs, k: searcher_equal_cost(len(costs), k),
    "n2-cost": _n2,
    "multi-regret": searcher_multi_regret,
    "single-regret": _single_full,
    "normal-k1": _normal_k1,
    "normal-k2": _normal_k2,
}


def _set_aside(costs, k):
    _need(len(costs) == 2, "set-aside hider needs exactly two boxes")
    return hider_set_aside_n2(costs[0], costs[1], k)


def _prefill(costs, k):
    _need(k == len(costs) - 1, "prefill hider needs k = n-1")
    return hider_prefill_single(costs)


HIDERS = {
    "equalizing-multi": hider_equalizing_multi,
    "equalizing-single": hider_equalizing_single,
    "set-aside-n2": _set_aside,
    "prefill-single": _prefill,
}


def build_strategy(name: str, costs, k: int):
    """A named constructor applied to an instance; returns the strategy object."""
    costs = as_costs(costs)
    if name in SEARCHERS:
        return SEARCHERS[name](costs, k)
    if name in HIDERS:
        return HIDERS[name](costs, k)
    raise InvalidInstance(f"unknown strategy {name!r}; choose from {sorted(SEARCHERS) + sorted(HIDERS)}")


def strategy_to_json(name: str, costs, k: int, exact: bool = True) -> dict:
    """Serialized form of ``build_strategy(name, costs, k)``."""
    obj = build_strategy(name, costs, k)
    if isinstance(obj, HiderMixed):
        return {**obj.to_json(), "name": name}
    if isinstance(obj, NormalStrategy):
        return {**obj.to_json(), "name": name}
    return {"kind": "searcher", "name": name, "description": obj.description,
            "costs": [format_number(c, exact) for c in as_costs(costs)], "balls": k}


def strategy_from_json(data: dict, exact: bool = True):
    """Rebuild a searcher policy or a ``HiderMixed`` from its JSON form."""
    try:
        kind = data["kind"]
        if kind == "hider":
            return HiderMixed.from_json(data, exact)
        if kind == "normal":
            mix = {}
            for seq, p in zip(data["sequences"], data["probabilities"]):
                key = tuple(int(b) - 1 for b in seq)
                mix[key] = mix.get(key, 0) + to_number(p, exact)
            return NormalStrategy(mix).policy()
        if kind == "decision_tree":
            moves = {InfoState(tuple(m["found"]), tuple(bool(d) for d in m["dead"])): int(m["open"]) - 1
                     for m in data["moves"]}
            return DecisionTreePolicy(moves)
        if kind == "searcher":
            name = data["name"]
            if name == "random":
                return searcher_random(int(data["seed"]), bool(data.get("memory", False)))
            _need(name in SEARCHERS, f"unknown searcher {name!r}")
            costs = [to_number(c, exact) for c in data["costs"]]
            return SEARCHERS[name](as_costs(costs), int(data["balls"]))
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, InvalidInstance):
            raise
        raise InvalidInstance(f"malformed strategy: {err!r}") from None
    raise InvalidInstance(f"unknown strategy kind {kind!r}")
