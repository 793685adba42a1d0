"""Exact solution of the search games at desk scale.

The hider's pure strategies are few enough to enumerate, the searcher's
are not, so ``solve_game`` runs a double oracle: solve the matrix game over
the searcher policies generated so far, compute an exact best response to
the hider's optimal mixture, add it as a column, repeat until the best
response no longer beats the restricted value.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .model import (GameVariant, HiderMixed, InfoState, Instance, PolicyViolation,
                    as_costs, enumerate_allocations, is_exact)
from .matrixgame import solve_matrix_game
from .strategies import SearcherPolicy, _weight, ending_pattern

log = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 2_000_000


class SolverBudgetExceeded(RuntimeError):
    pass


class DecisionTreePolicy(SearcherPolicy):
    """A pure searcher strategy: reachable info state -> next box."""

    def __init__(self, choices: dict):
        self.choices = dict(choices)
        self.description = f"decision tree with {len(self.choices)} nodes"
        self._key = tuple(sorted((i.found, i.dead, b) for i, b in self.choices.items()))

    def act(self, info, state):
        try:
            return [(1, self.choices[info], None)]
        except KeyError:
            raise PolicyViolation(f"decision tree has no move at {info}") from None

    def __eq__(self, other):
        return isinstance(other, DecisionTreePolicy) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def payoff(self, x, costs, variant="multi-cost"):
        """Deterministic payoff against a pure allocation."""
        variant = GameVariant.parse(variant)
        info = InfoState.initial(len(costs))
        k = sum(x)
        total = 0 * costs[0]
        while info.total_found < k:
            box = self.choices[info]
            ball = info.found[box] < x[box]
            if not ball or not variant.regret:
                total += costs[box]
            info = info.after(box, ball, variant.single)
        return total

    def to_json(self) -> dict:
        return {"kind": "decision_tree",
                "moves": [{"found": list(i.found), "dead": list(i.dead), "open": b + 1}
                          for i, b in sorted(self.choices.items(),
                                             key=lambda kv: (kv[0].found, kv[0].dead))]}


def best_response(hider: HiderMixed, costs: Sequence, variant="multi-cost", *,
                  budget: int = DEFAULT_STATE_BUDGET):
    """Minimum expected payoff over all adaptive searchers, and a policy attaining it.

    Dynamic program over info states carrying unnormalized posterior mass:
    the value of a state is the probability-weighted payoff still to come,
    so no division is needed. Where two boxes tie the lower index wins;
    states the hider never reaches are resolved against a uniform prior so
    the returned tree is sensible against every allocation.
    """
    variant = GameVariant.parse(variant)
    costs = as_costs(costs)
    n, k = len(costs), hider.k
    single, regret = variant.single, variant.regret
    allocs = enumerate_allocations(n, k, variant.look_mode)
    prior = {x: 0 * costs[0] for x in allocs}
    for x, p in hider.items():
        prior[x] = p
    one = costs[0] ** 0
    # index -> (primary weight, secondary weight)
    weights = [(prior[x], one) for x in allocs]
    memo: dict = {}
    choice: dict = {}

    def solve(info, members):
        if info in memo:
            return memo[info]
        if len(memo) >= budget:
            raise SolverBudgetExceeded(f"best response exceeded {budget} states")
        if info.total_found == k:
            memo[info] = (0, 0)
            return memo[info]
        best, best_box = None, None
        for box in info.live():
            hit = [i for i in members if allocs[i][box] > info.found[box]]
            miss = [i for i in members if allocs[i][box] == info.found[box]]
            val = [0, 0]
            if hit:
                sub = solve(info.after(box, True, single), hit)
                val[0] += sub[0]
                val[1] += sub[1]
            if miss:
                sub = solve(info.after(box, False, single), miss)
                val[0] += sub[0]
                val[1] += sub[1]
            charged = miss if regret else members
            for i in charged:
                val[0] += weights[i][0] * costs[box]
                val[1] += weights[i][1] * costs[box]
            val = tuple(val)
            if best is None or val < best:
                best, best_box = val, box
        memo[info] = best
        choice[info] = best_box
        return best

    root = InfoState.initial(n)
    total = solve(root, list(range(len(allocs))))
    mass = sum(p for _, p in hider.items())
    return total[0] / mass, DecisionTreePolicy(_reachable(choice, root, allocs, k, single))


def _reachable(choice, root, allocs, k, single):
    keep = {}
    stack = [root]
    while stack:
        info = stack.pop()
        if info in keep or info.total_found == k:
            continue
        box = choice[info]
        keep[info] = box
        for ball in (True, False):
            nxt = info.after(box, ball, single)
            if any(nxt.consistent(x) for x in allocs):
                stack.append(nxt)
    return keep


@dataclass
class SolveResult:
    value: object
    hider_mixed: HiderMixed
    searcher_mixed: dict
    iterations: int
    duality_gap: object
    lower_bound: object = None
    matrix: list = field(default_factory=list, repr=False)
    columns: list = field(default_factory=list, repr=False)


def _support_cleanup(probs, exact, tol=1e-10):
    if exact:
        return probs
    cleaned = [p if p > tol else 0.0 for p in probs]
    total = sum(cleaned)
    return [p / total for p in cleaned]


def solve_game(costs: Sequence, k: int, variant="multi-cost", eps: float | None = None, *,
               exact: bool | None = None, max_iter: int = 500,
               budget: int = DEFAULT_STATE_BUDGET, seed_columns=()) -> SolveResult:
    """Value and optimal strategies of one instance by the double oracle.

    In exact mode (rational costs) the loop runs until the best response
    matches the restricted value exactly. ``seed_columns`` may add extra
    decision trees to start from.
    """
    variant = GameVariant.parse(variant)
    if exact is None:
        exact = is_exact(as_costs(costs))
    costs = as_costs(costs, exact)
    inst = Instance(costs, k, variant)
    rows = inst.allocations()
    if eps is None:
        eps = 0 if exact else 1e-9
    if k == 0:
        hm = HiderMixed.point(rows[0], variant.look_mode)
        return SolveResult(0 * costs[0], hm, {}, 0, 0, 0)

    def column(tree):
        return [tree.payoff(x, costs, variant) for x in rows]

    uniform = HiderMixed({x: (Fraction(1, len(rows)) if exact else 1.0 / len(rows)) for x in rows},
                         variant.look_mode)
    _, seed = best_response(uniform, costs, variant, budget=budget)
    cols = [seed] + [c for c in seed_columns if c != seed]
    matrix = [[] for _ in rows]
    for tree in cols:
        for r, v in zip(matrix, column(tree)):
            r.append(v)

    # exact runs iterate in floats first and only then confirm in rationals
    fcosts = [float(c) for c in costs]
    precise = not exact
    it = 0
    while True:
        it += 1
        value, row_mix, col_mix = solve_matrix_game(matrix, exact=exact and precise)
        row_mix = _support_cleanup(row_mix, exact and precise)
        hider = HiderMixed(dict(zip(rows, row_mix)), variant.look_mode)
        br_value, tree = best_response(hider, costs if precise else fcosts, variant, budget=budget)
        gap = value - br_value
        log.debug("iteration %d: restricted value %s, best response %s", it, value, br_value)
        done = gap <= (eps if precise else 1e-9) or tree in cols
        if done and not precise:
            precise = True
            continue
        if done or it >= max_iter:
            break
        cols.append(tree)
        for r, v in zip(matrix, column(tree)):
            r.append(v)

    col_mix = _support_cleanup(col_mix, exact)
    searcher = {tree: p for tree, p in zip(cols, col_mix) if p != 0}
    return SolveResult(value, hider, searcher, it, gap, br_value, matrix, cols)


@dataclass
class EqualizingReport:
    equalizing: bool
    support: list
    max_ratio_deviation: object
    missing: list


def check_equalizing_property(hm: HiderMixed, costs: Sequence, tol: float = 1e-6,
                              look_mode: str | None = None) -> EqualizingReport:
    """Is each support probability proportional to prod c_i^x_i?

    Reports the support, the allocations outside it, and the largest
    relative deviation of p(x) from its renormalized equalizing weight.
    """
    costs = as_costs(costs)
    look_mode = look_mode or hm.look_mode
    support = [x for x, p in hm.items() if p > (0 if isinstance(p, Fraction) else tol * 1e-3)]
    weights = {x: _weight(costs, x) for x in support}
    total = sum(weights.values())
    dev = max(abs(hm[x] / (weights[x] / total) - 1) for x in support)
    exact = isinstance(dev, Fraction)
    ok = dev == 0 if exact else dev <= tol
    missing = [x for x in enumerate_allocations(hm.n, hm.k, look_mode) if x not in weights]
    return EqualizingReport(ok, support, dev, missing)


def canonical_sequences(n: int, k: int) -> list[tuple]:
    """Search sequences up to reordering of their first and last k entries.

    Reordering the first k or the last k opens never changes a sequence's
    regret, so these representatives are enough for the normal-strategy
    game; the first and last k entries are kept sorted.
    """
    base = [i for i in range(n) for _ in range(k)]
    seen = set()
    out = []
    for perm in set(itertools.permutations(base)):
        key = tuple(sorted(perm[:k])) + perm[k:len(perm) - k] + tuple(sorted(perm[-k:]))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return sorted(out)


def solve_normal_game(costs: Sequence, k: int, *, exact: bool | None = None,
                      max_sequences: int = 20000):
    """Multi-look regret game restricted to normal searcher strategies.

    Returns ``(value, hider_mixed, {sequence: prob})``.
    """
    from .engine import sequence_regret

    if exact is None:
        exact = is_exact(as_costs(costs))
    costs = as_costs(costs, exact)
    n = len(costs)
    from math import factorial
    total = factorial(n * k) // factorial(k) ** n
    if total > max_sequences:
        raise SolverBudgetExceeded(f"{total} search sequences exceed the limit {max_sequences}")
    seqs = canonical_sequences(n, k)
    rows = enumerate_allocations(n, k, "multi")
    matrix = [[sequence_regret(s, x, costs) for s in seqs] for x in rows]
    value, row_mix, col_mix = solve_matrix_game(matrix, exact=exact)
    row_mix = _support_cleanup(row_mix, exact)
    hider = HiderMixed(dict(zip(rows, row_mix)), "multi")
    return value, hider, {s: p for s, p in zip(seqs, col_mix) if p}


def exhaustive_best_response(hider: HiderMixed, costs: Sequence, variant="multi-cost"):
    """Minimum over every pure decision tree, by brute-force enumeration.

    Only for tiny instances; the number of trees grows doubly exponentially.
    """
    variant = GameVariant.parse(variant)
    costs = as_costs(costs)
    n, k = len(costs), hider.k
    allocs = enumerate_allocations(n, k, variant.look_mode)
    best = None
    for tree in enumerate_decision_trees(n, k, variant.look_mode, allocs):
        pol = DecisionTreePolicy(tree)
        val = sum(p * pol.payoff(x, costs, variant) for x, p in hider.items())
        if best is None or val < best:
            best = val
    return best


def enumerate_decision_trees(n: int, k: int, look_mode: str, allocs=None):
    """Yield every pure searcher strategy as a dict info -> box."""
    if allocs is None:
        allocs = enumerate_allocations(n, k, look_mode)
    single = look_mode == "single"

    def trees(info):
        if info.total_found == k or not any(info.consistent(x) for x in allocs):
            yield {}
            return
        for box in info.live():
            hit = info.after(box, True, single)
            miss = info.after(box, False, single)
            hit_ok = any(hit.consistent(x) for x in allocs)
            miss_ok = any(miss.consistent(x) for x in allocs)
            hit_trees = list(trees(hit)) if hit_ok else [{}]
            miss_trees = list(trees(miss)) if miss_ok else [{}]
            for a in hit_trees:
                for b in miss_trees:
                    t = {info: box}
                    t.update(a)
                    t.update(b)
                    yield t

    yield from trees(InfoState.initial(n))


def ending_distribution(seq_mix: dict, n: int, k: int) -> dict:
    out = {}
    for s, p in seq_mix.items():
        y = ending_pattern(s, n, k)
        out[y] = out.get(y, 0) + p
    return out
