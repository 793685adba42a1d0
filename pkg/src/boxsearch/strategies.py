"""Hider mixtures and searcher policies.

A searcher policy is a small state machine the engine drives:

* ``start()`` gives the initial internal state;
* ``act(info, state)`` returns ``[(prob, box, state_after_choice), ...]``,
  the distribution over the next box (0-based) together with whatever the
  policy needs to remember about the draw;
* ``observe(state, box, ball, info)`` updates the state once the outcome of
  opening ``box`` is known (``info`` is already updated).

Every randomization is returned explicitly so the engine can take exact
expectations. States must be hashable; the engine memoizes on
``(info, state)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .model import (HiderMixed, InfoState, InvalidInstance, PolicyViolation,
                    as_costs, enumerate_allocations)
from .symfun import COMPLETE, ELEMENTARY, sym_table
from .values import (canonical_order, cutoff_b_multi_n2, cutoff_b_single,
                     regret_column_weights)


def _weight(costs, x):
    w = costs[0] ** 0
    for c, xi in zip(costs, x):
        w *= c ** xi
    return w


# ---------------------------------------------------------------- hiders


def hider_equalizing_multi(costs: Sequence, k: int) -> HiderMixed:
    """Allocation x with probability prod c_i^x_i / T_k([n])."""
    costs = as_costs(costs)
    if k < 1:
        raise InvalidInstance("k must be >= 1")
    total = sym_table(costs, k, COMPLETE)(k)
    return HiderMixed({x: _weight(costs, x) / total
                       for x in enumerate_allocations(len(costs), k, "multi")}, "multi")


def hider_equalizing_single(costs: Sequence, k: int) -> HiderMixed:
    """0/1 allocation x with probability prod c_i^x_i / S_k([n])."""
    costs = as_costs(costs)
    if not 1 <= k <= len(costs):
        raise InvalidInstance(f"single-look needs 1 <= k <= n, got k={k}")
    total = sym_table(costs, k, ELEMENTARY)(k)
    return HiderMixed({x: _weight(costs, x) / total
                       for x in enumerate_allocations(len(costs), k, "single")}, "single")


def hider_restricted_equalizing(costs: Sequence, k: int, support, look_mode: str = "multi") -> HiderMixed:
    """Equalizing weights renormalized over a given support."""
    costs = as_costs(costs)
    support = [tuple(x) for x in support]
    if not support:
        raise InvalidInstance("support must be non-empty")
    for x in support:
        if len(x) != len(costs) or sum(x) != k:
            raise InvalidInstance(f"allocation {x} does not fit n={len(costs)}, k={k}")
    weights = {x: _weight(costs, x) for x in support}
    total = sum(weights.values())
    return HiderMixed({x: w / total for x, w in weights.items()}, look_mode)


def _permute_hider(hm: HiderMixed, perm) -> HiderMixed:
    """Map a hider over sorted boxes back to original box order."""
    out = {}
    for x, p in hm.items():
        y = [0] * len(x)
        for pos, orig in enumerate(perm):
            y[orig] = x[pos]
        out[tuple(y)] = p
    return HiderMixed(out, hm.look_mode)


def hider_set_aside_n2(c1, c2, k: int) -> HiderMixed:
    """k-b balls surely in the dearer box, the other b hidden by the equalizer."""
    c1, c2 = as_costs((c1, c2))
    if c1 < c2:
        return _permute_hider(hider_set_aside_n2(c2, c1, k), (1, 0))
    b = cutoff_b_multi_n2(c1, c2, k).b
    inner = hider_equalizing_multi((c1, c2), b)
    return HiderMixed({(x[0] + k - b, x[1]): p for x, p in inner.items()}, "multi")


def hider_prefill_single(costs: Sequence) -> HiderMixed:
    """k = n-1: balls surely in the n-b cheapest boxes, the remaining b-1
    equalized over the b dearest."""
    costs, perm = canonical_order(as_costs(costs))
    n = len(costs)
    b = cutoff_b_single(costs).b
    inner = hider_equalizing_single(costs[:b], b - 1)
    return _permute_hider(HiderMixed({x + (1,) * (n - b): p for x, p in inner.items()}, "single"), perm)


# ---------------------------------------------------------------- policies


class SearcherPolicy:
    """Base class; subclasses override ``act`` and usually ``observe``."""

    description = "searcher policy"

    def start(self):
        return None

    def act(self, info: InfoState, state) -> list:
        raise NotImplementedError

    def observe(self, state, box: int, ball: bool, info: InfoState):
        return state

    def __repr__(self):
        return f"<{type(self).__name__}: {self.description}>"


def _lowest_live(info: InfoState, exclude=()):
    for i in info.live():
        if i not in exclude:
            return i
    return None


class UniformAdaptive(SearcherPolicy):
    """Each open picks uniformly among boxes that may still hold a ball."""

    description = "uniform over live boxes"

    def act(self, info, state):
        live = info.live()
        p = Fraction(1, len(live))
        return [(p, i, None) for i in live]


def searcher_uniform_adaptive(n: int | None = None, k: int | None = None) -> SearcherPolicy:
    return UniformAdaptive()


class EqualCostSearcher(SearcherPolicy):
    """With k' balls left, pick a live box uniformly and a commitment j with
    probability proportional to k'+1-j; open that box until it is empty or
    has produced j balls, then choose again."""

    description = "equal-cost commitment policy"

    def __init__(self, k: int):
        self.k = k

    @staticmethod
    def commitment_weights(left: int) -> list[Fraction]:
        lam = Fraction(2, left * (left + 1))
        return [lam * (left + 1 - j) for j in range(1, left + 1)]

    def act(self, info, state):
        if state is not None:
            box, j, got = state
            if not info.dead[box]:
                return [(Fraction(1), box, state)]
        live = info.live()
        left = info.remaining(self.k)
        weights = self.commitment_weights(left)
        out = []
        for box in live:
            for j, pj in enumerate(weights, start=1):
                out.append((pj / len(live), box, (box, j, 0)))
        return out

    def observe(self, state, box, ball, info):
        _, j, got = state
        if not ball:
            return None
        got += 1
        return None if got >= j else (box, j, got)


def searcher_equal_cost(n: int, k: int) -> SearcherPolicy:
    if n < 1 or k < 1:
        raise InvalidInstance("need n >= 1 and k >= 1")
    return EqualCostSearcher(k)


def n2_cost_q_weights(c1, c2, k: int) -> list:
    """q_k(j) = 1 - k c1^(k-j) c2^j / T_k([2]) for j = 0..k."""
    total = sym_table((c1, c2), k, COMPLETE)(k)
    return [1 - k * c1 ** (k - j) * c2 ** j / total for j in range(k + 1)]


class N2CostSearcher(SearcherPolicy):
    """Two boxes, c1 >= c2. Open box 1 up to k-b times; then draw j from q_b
    and open box 1 at most j more times before switching to box 2. A dead box
    always sends the search to the other one."""

    def __init__(self, c1, c2, k: int):
        res = cutoff_b_multi_n2(c1, c2, k)
        self.k, self.b = k, res.b
        self.q = n2_cost_q_weights(c1, c2, self.b)
        if any(w < 0 for w in self.q):
            raise AssertionError(f"negative q weights {self.q}")
        self.description = f"n=2 cost policy (b={self.b})"

    def start(self):
        return ("pre", 0) if self.k > self.b else ("draw",)

    def act(self, info, state):
        if info.dead[0]:
            return [(Fraction(1), 1, state)]
        if info.dead[1]:
            return [(Fraction(1), 0, state)]
        if state[0] == "pre":
            return [(Fraction(1), 0, state)]
        if state[0] == "draw":
            return [(w, 0 if j > 0 else 1, ("q", j, 0)) for j, w in enumerate(self.q) if w != 0]
        _, j, cnt = state
        return [(Fraction(1), 0 if cnt < j else 1, state)]

    def observe(self, state, box, ball, info):
        if box != 0 or not ball:
            return state
        if state[0] == "pre":
            got = state[1] + 1
            return ("pre", got) if got < self.k - self.b else ("draw",)
        if state[0] == "q":
            return ("q", state[1], state[2] + 1)
        return state


def searcher_n2_cost(c1, c2, k: int) -> SearcherPolicy:
    """Either box order is accepted; the policy is re-indexed if c1 < c2."""
    return in_user_order((c1, c2), lambda c: N2CostSearcher(c[0], c[1], k))


class MultiRegretSearcher(SearcherPolicy):
    """Recursive search on prefixes [m], last box first.

    At level m the searcher believes ``bel`` balls lie in boxes 1..m. She
    draws s from the column weights, opens box m until s balls or an empty
    reveal, then descends to [m-1] believing ``bel`` minus what box m gave.
    Once box 1 is dead every remaining live box is one that reached its s
    and may hold more; those are emptied lowest index first.

    State: ``("lvl", m, bel, s, got)`` or ``("ret",)``.
    """

    def __init__(self, costs, k: int):
        self.costs = as_costs(costs)
        self.k = k
        self.n = len(self.costs)
        self.weights = {}
        for m in range(2, self.n + 1):
            for bel in range(0, k + 1):
                self.weights[m, bel] = regret_column_weights(self.costs[:m], bel) if bel else [1]
        self.description = f"recursive regret search on {self.n} boxes"

    def start(self):
        return ("lvl", self.n, self.k, None, 0)

    def act(self, info, state):
        if state[0] == "ret":
            return [(Fraction(1), _lowest_live(info), state)]
        _, m, bel, s, got = state
        if m == 0:
            return self.act(info, ("ret",))
        if s is None:
            if m == 1:
                return self.act(info, ("lvl", 1, bel, bel + self.n + self.k, 0))
            out = []
            for s_new, p in enumerate(self.weights[m, bel]):
                if p == 0:
                    continue
                for q, box, st in self.act(info, ("lvl", m, bel, s_new, 0)):
                    out.append((p * q, box, st))
            return out
        box = m - 1
        if got < s and not info.dead[box]:
            return [(Fraction(1), box, state)]
        return self.act(info, ("lvl", m - 1, max(bel - got, 0), None, 0))

    def observe(self, state, box, ball, info):
        if state[0] == "lvl" and ball and box == state[1] - 1:
            _, m, bel, s, got = state
            return ("lvl", m, bel, s, got + 1)
        return state


def searcher_multi_regret(costs: Sequence, k: int) -> SearcherPolicy:
    if k < 1:
        raise InvalidInstance("k must be >= 1")
    return MultiRegretSearcher(costs, k)


def single_q_weights(costs: Sequence) -> list:
    """q_n(j) = 1 - (n-1)/c_j / sum_i 1/c_i: chance of leaving box j for last."""
    n = len(costs)
    inv = sum(1 / c for c in costs)
    return [1 - (n - 1) / c / inv for c in costs]


class SingleRegretSearcher(SearcherPolicy):
    """k = n-1 on costs sorted decreasingly. Open boxes b+1..n first; on an
    empty reveal finish the rest in index order, otherwise draw the box to
    leave for last among 1..b from q_b."""

    def __init__(self, costs):
        self.costs = as_costs(costs)
        self.n = len(self.costs)
        res = cutoff_b_single(self.costs)
        self.b = res.b
        self.q = single_q_weights(self.costs[:self.b])
        if any(w < 0 for w in self.q):
            raise AssertionError(f"negative q weights {self.q}")
        self.description = f"single-look regret policy (b={self.b})"

    def start(self):
        return ("pre",)

    @staticmethod
    def _untouched(info, i):
        return not info.dead[i] and info.found[i] == 0

    def act(self, info, state):
        if state[0] == "pre":
            for i in range(self.b, self.n):
                if self._untouched(info, i):
                    return [(Fraction(1), i, state)]
            out = []
            for j, w in enumerate(self.q):
                if w == 0:
                    continue
                out.extend((w * p, box, st) for p, box, st in self.act(info, ("last", j)))
            return out
        if state[0] == "last":
            j = state[1]
            box = _lowest_live(info, exclude=(j,))
            return [(Fraction(1), j if box is None else box, state)]
        return [(Fraction(1), _lowest_live(info), state)]

    def observe(self, state, box, ball, info):
        if state[0] == "pre" and not ball:
            return ("fin",)
        return state


def searcher_single_regret_full(costs: Sequence) -> SearcherPolicy:
    """Optimal k = n-1 single-look regret policy, for costs in any order."""
    costs = as_costs(costs)
    if len(costs) < 2:
        raise InvalidInstance("need at least two boxes")
    return in_user_order(costs, SingleRegretSearcher)


class PermutedPolicy(SearcherPolicy):
    """Run ``inner`` (written for sorted boxes) on the user's box order.

    ``perm[i]`` is the user box shown to the inner policy as box i.
    """

    def __init__(self, inner: SearcherPolicy, perm):
        self.inner = inner
        self.perm = tuple(perm)
        self.description = f"{inner.description} on boxes {[p + 1 for p in self.perm]}"

    def _inner_info(self, info):
        return InfoState(tuple(info.found[p] for p in self.perm),
                         tuple(info.dead[p] for p in self.perm))

    def start(self):
        return self.inner.start()

    def act(self, info, state):
        return [(p, self.perm[box], st) for p, box, st in self.inner.act(self._inner_info(info), state)]

    def observe(self, state, box, ball, info):
        return self.inner.observe(state, self.perm.index(box), ball, self._inner_info(info))


def in_user_order(costs: Sequence, build) -> SearcherPolicy:
    """Build a policy that needs sorted costs for an arbitrary cost order."""
    ordered, perm = canonical_order(as_costs(costs))
    inner = build(ordered)
    if list(perm) == list(range(len(perm))):
        return inner
    return PermutedPolicy(inner, perm)


class RandomPolicy(SearcherPolicy):
    """A fixed but arbitrary admissible behaviour policy.

    Choices are drawn from ``random.Random`` seeded by the seed, the info
    state and (with ``memory``) the last box opened, so the policy is
    reproducible and its probabilities are exact rationals.
    """

    def __init__(self, seed: int, memory: bool = False, max_weight: int = 3):
        self.seed = seed
        self.memory = memory
        self.max_weight = max_weight
        self.description = f"random policy seed={seed}{' with memory' if memory else ''}"

    def start(self):
        return -1 if self.memory else None

    def act(self, info, state):
        live = info.live()
        rng = random.Random(f"{self.seed}|{info.found}|{info.dead}|{state}")
        weights = [rng.randint(0, self.max_weight) for _ in live]
        if not any(weights):
            weights[rng.randrange(len(live))] = 1
        total = sum(weights)
        return [(Fraction(w, total), box, state) for w, box in zip(weights, live) if w]

    def observe(self, state, box, ball, info):
        return box if self.memory else state


def searcher_random(seed: int, memory: bool = False) -> SearcherPolicy:
    return RandomPolicy(seed, memory)


# ------------------------------------------------------ normal strategies


def check_sequence(seq: Sequence[int], n: int, k: int, look_mode: str = "multi") -> tuple:
    """Validate a 0-based search sequence: each box k times (multi) or a permutation (single)."""
    seq = tuple(int(i) for i in seq)
    reps = k if look_mode == "multi" else 1
    if len(seq) != n * reps or any(seq.count(i) != reps for i in range(n)):
        raise InvalidInstance(f"sequence {seq} must contain each of the {n} boxes {reps} times")
    return seq


@dataclass(frozen=True)
class NormalStrategy:
    """A mixture of fixed search sequences (0-based box indices)."""

    mixture: dict
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        items = {}
        for seq, p in self.mixture.items():
            if p == 0:
                continue
            if p < 0:
                raise InvalidInstance(f"negative probability on {seq}")
            seq = tuple(seq)
            items[seq] = items.get(seq, 0) + p
        if not items:
            raise InvalidInstance("empty normal strategy")
        first = next(iter(items))
        n = max(first) + 1
        k = len(first) // n
        look = "single" if k == 1 and len(first) == n else "multi"
        for seq in items:
            check_sequence(seq, n, k, look)
        total = sum(items.values())
        if (abs(total - 1) > 1e-9) if isinstance(total, float) else total != 1:
            raise InvalidInstance(f"mixture probabilities sum to {total}")
        object.__setattr__(self, "mixture", items)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    def items(self):
        return self.mixture.items()

    def policy(self) -> "NormalPolicy":
        return NormalPolicy(self)

    def to_json(self) -> dict:
        return {"kind": "normal",
                "sequences": [[i + 1 for i in seq] for seq in self.mixture],
                "probabilities": [str(p) if isinstance(p, Fraction) else p
                                  for p in self.mixture.values()]}


class NormalPolicy(SearcherPolicy):
    """Follow a sequence drawn from a normal strategy, skipping dead boxes."""

    def __init__(self, normal: NormalStrategy):
        self.normal = normal
        self.description = f"normal strategy over {len(normal.mixture)} sequences"

    def act(self, info, state):
        if state is None:
            out = []
            for seq, p in self.normal.items():
                out.extend((p * q, box, st) for q, box, st in self.act(info, (seq, 0)))
            return out
        seq, pos = state
        while pos < len(seq) and info.dead[seq[pos]]:
            pos += 1
        if pos == len(seq):
            raise PolicyViolation(f"sequence {seq} exhausted before all balls were found")
        return [(Fraction(1), seq[pos], (seq, pos + 1))]


def _all_orders(items):
    return list(itertools.permutations(items))


def searcher_normal_k1(costs: Sequence) -> NormalStrategy:
    """End at box j with probability c_j / sum c, uniformly over orders of the rest."""
    costs = as_costs(costs)
    n = len(costs)
    total = sum(costs)
    mixture = {}
    for j in range(n):
        others = [i for i in range(n) if i != j]
        each = costs[j] / total / factorial(n - 1)
        for order in _all_orders(others):
            mixture[order + (j,)] = each
    return NormalStrategy(mixture)


def _pairs(order):
    return tuple(b for box in order for b in (box, box))


def normal_k2_pattern(n: int, y: Sequence[int]) -> NormalStrategy:
    """The k=2 normal strategy ending with pattern ``y`` (0-based box counts).

    Two balls' worth at box i: open the other boxes in random order, each
    twice in a row. One at boxes i and j: with probability 1/3 each,
    (a) random order of the others, then a random order of all boxes;
    (b) i, the others twice in a row in random order, then j;
    (c) the same with i and j swapped.
    """
    y = tuple(y)
    if len(y) != n or sum(y) != 2 or any(v < 0 for v in y):
        raise InvalidInstance(f"bad ending pattern {y}")
    ends = [i for i in range(n) for _ in range(y[i])]
    mixture = {}
    if len(set(ends)) == 1:
        i = ends[0]
        others = [b for b in range(n) if b != i]
        orders = _all_orders(others)
        for order in orders:
            mixture[_pairs(order) + (i, i)] = Fraction(1, len(orders))
        return NormalStrategy(mixture)
    i, j = ends
    others = [b for b in range(n) if b not in (i, j)]
    third = Fraction(1, 3)
    lead = _all_orders(others)
    full = _all_orders(range(n))
    for a in lead:
        for b in full:
            seq = a + b + (i, j)
            mixture[seq] = mixture.get(seq, 0) + third / (len(lead) * len(full))
    for first, second in ((i, j), (j, i)):
        for order in lead:
            seq = (first,) + _pairs(order) + (second, i, j)
            mixture[seq] = mixture.get(seq, 0) + third / len(lead)
    return NormalStrategy(mixture)


def normal_k2_strategy(costs: Sequence) -> NormalStrategy:
    """Mix the ending patterns y with the equalizing weights prod c^y / T_2."""
    costs = as_costs(costs)
    n = len(costs)
    mixture = {}
    for y, w in hider_equalizing_multi(costs, 2).items():
        for seq, p in normal_k2_pattern(n, y).items():
            mixture[seq] = mixture.get(seq, 0) + w * p
    return NormalStrategy(mixture)


def searcher_normal_k2(costs: Sequence) -> SearcherPolicy:
    return NormalPolicy(normal_k2_strategy(costs))


def ending_pattern(seq: Sequence[int], n: int, k: int) -> tuple:
    tail = seq[-k:]
    return tuple(tail.count(i) for i in range(n))
