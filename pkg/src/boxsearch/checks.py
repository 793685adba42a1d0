"""Randomized and exhaustive property suites, and the reference-value table.

Each suite returns a ``SuiteReport``; counterexamples are kept verbatim.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import evaluate_mixed
from .matrixgame import solve_matrix_game
from .model import GameVariant, HiderMixed, Instance, enumerate_allocations
from .solver import best_response, check_equalizing_property, exhaustive_best_response, solve_game
from .strategies import (hider_equalizing_multi, hider_equalizing_single,
                         normal_k2_pattern, searcher_equal_cost, searcher_multi_regret,
                         searcher_n2_cost, searcher_normal_k1, searcher_normal_k2, searcher_random,
                         searcher_single_regret_full, searcher_uniform_adaptive)
from .values import (closed_form_value, regret_column_weights, regret_reduction_matrix,
                     value_multi_cost_equalizing, value_multi_regret, value_single_regret)


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, detail):
        self.checked += 1
        if not ok:
            self.failures.append(detail)


def random_costs(rng: random.Random, n: int, lo: int = 1, hi: int = 20, den: int = 4) -> tuple:
    """Positive rationals with small denominators."""
    return tuple(Fraction(rng.randint(lo * den, hi * den), den) for _ in range(n))


# ------------------------------------------------------------ equalizer


def policy_battery(costs, k: int, variant: GameVariant, n_random: int = 50, seed: int = 0):
    """Every applicable constructor plus ``n_random`` random admissible policies."""
    n = len(costs)
    out = [("uniform_adaptive", searcher_uniform_adaptive(n, k)),
           ("equal_cost", searcher_equal_cost(n, k)),
           ("multi_regret", searcher_multi_regret(costs, k))]
    if n == 2:
        out.append(("n2_cost", searcher_n2_cost(costs[0], costs[1], k)))
    if k == 1:
        out.append(("normal_k1", searcher_normal_k1(costs).policy()))
    if k == 2 and not variant.single:
        out.append(("normal_k2", searcher_normal_k2(costs)))
    if variant.single and k == n - 1 and n >= 2:
        out.append(("single_regret_full", searcher_single_regret_full(costs)))
    for i in range(n_random):
        out.append((f"random#{i}", searcher_random(seed * 1000 + i, memory=bool(i % 2))))
    return out


def equalizer_target(costs, k, variant: GameVariant):
    if variant.single:
        return hider_equalizing_single(costs, k), value_single_regret(costs, k)
    hider = hider_equalizing_multi(costs, k)
    if variant.regret:
        return hider, value_multi_regret(costs, k)
    return hider, value_multi_cost_equalizing(costs, k)


EQUALIZER_VARIANTS = (GameVariant("multi", "cost"), GameVariant("multi", "regret"),
                      GameVariant("single", "regret"))


def equalizer_cases(max_n=4, max_k=3):
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            for variant in EQUALIZER_VARIANTS:
                if variant.single and k > n:
                    continue
                yield n, k, variant


def suite_equalizer(budget: int = 100, seed: int = 0, n_random: int = 3) -> SuiteReport:
    """``budget`` random (instance, policy) pairs checked against U / V / W."""
    rng = random.Random(seed)
    rep = SuiteReport("equalizer")
    cases = list(equalizer_cases())
    for trial in range(budget):
        n, k, variant = rng.choice(cases)
        costs = random_costs(rng, n)
        battery = policy_battery(costs, k, variant, n_random=n_random, seed=trial)
        name, policy = rng.choice(battery)
        hider, target = equalizer_target(costs, k, variant)
        got = evaluate_mixed(policy, hider, costs, variant).expected_payoff
        rep.check(got == target, {"costs": [str(c) for c in costs], "k": k, "variant": str(variant),
                                  "policy": name, "got": str(got), "expected": str(target)})
    return rep


# ------------------------------------------------------- normal strategies


def _fast_seq_regret(seq, x, costs):
    left = list(x)
    dead = [False] * len(costs)
    need = sum(x)
    regret = 0
    for box in seq:
        if need == 0:
            break
        if dead[box]:
            continue
        if left[box]:
            left[box] -= 1
            need -= 1
        else:
            dead[box] = True
            regret += costs[box]
    return regret


def all_sequences(n: int, k: int):
    base = [i for i in range(n) for _ in range(k)]
    return sorted(set(itertools.permutations(base)))


def suite_edge_permutation(max_n: int = 3, max_k: int = 3, seed: int = 0) -> SuiteReport:
    """Permuting the first k or last k entries never changes a sequence's regret."""
    rng = random.Random(seed)
    rep = SuiteReport("edge-permutation")
    for n in range(1, max_n + 1):
        costs = random_costs(rng, n)
        for k in range(1, max_k + 1):
            allocs = enumerate_allocations(n, k)
            for seq in all_sequences(n, k):
                base = [_fast_seq_regret(seq, x, costs) for x in allocs]
                head, mid, tail = seq[:k], seq[k:len(seq) - k], seq[len(seq) - k:]
                variants = set()
                for h in set(itertools.permutations(head)):
                    variants.add(h + mid + tail)
                for t in set(itertools.permutations(tail)):
                    variants.add(head + mid + t)
                for other in variants:
                    got = [_fast_seq_regret(other, x, costs) for x in allocs]
                    rep.check(got == base, {"n": n, "k": k, "sequence": seq, "reordered": other})
    return rep


def suite_overlap_regret(max_n: int = 3, max_k: int = 3, seed: int = 0) -> SuiteReport:
    """If a sequence ends with y and x_i + y_i > k, its regret on x is the sum of c_j, j != i."""
    rng = random.Random(seed)
    rep = SuiteReport("overlap-regret")
    for n in range(1, max_n + 1):
        costs = random_costs(rng, n)
        for k in range(1, max_k + 1):
            allocs = enumerate_allocations(n, k)
            for seq in all_sequences(n, k):
                tail = seq[len(seq) - k:]
                y = tuple(tail.count(i) for i in range(n))
                for x in allocs:
                    heavy = [i for i in range(n) if x[i] + y[i] > k]
                    if not heavy:
                        continue
                    i = heavy[0]
                    expected = sum(c for j, c in enumerate(costs) if j != i)
                    got = _fast_seq_regret(seq, x, costs)
                    rep.check(got == expected, {"n": n, "k": k, "sequence": seq, "x": x,
                                                "got": str(got), "expected": str(expected)})
    return rep


def k2_pattern_cases(costs):
    """The seven (y, x, closed-form regret) cases for k = 2, 0-based boxes."""
    n = len(costs)
    c = costs

    def e(*idx):
        v = [0] * n
        for i in idx:
            v[i] += 1
        return tuple(v)

    tail = lambda start: sum(c[start:], Fraction(0))  # noqa: E731
    cases = []
    cases.append(("1: y=x=(2,0,..)", e(0, 0), e(0, 0), None))
    if n >= 2:
        cases.append(("2: y=(2,0,..), x=(0,2,..)", e(0, 0), e(1, 1), tail(2) / 2))
        cases.append(("3: y=(2,0,..), x=(1,1,..)", e(0, 0), e(0, 1), sum(c[1:], Fraction(0))))
        cases.append(("5: y=x=(1,1,..)", e(0, 1), e(0, 1), None))
    if n >= 3:
        cases.append(("4: y=(2,0,..), x=(0,1,1,..)", e(0, 0), e(1, 2),
                      (c[1] + c[2]) / 2 + Fraction(2, 3) * tail(3)))
        cases.append(("6: y=(1,1,..), x=(0,1,1,..)", e(0, 1), e(1, 2),
                      (c[0] + c[2]) / 2 + Fraction(5, 6) * tail(3)))
    if n >= 4:
        cases.append(("7: y=(1,1,..), x=(0,0,1,1,..)", e(0, 1), e(2, 3),
                      (c[0] + c[1] + c[2] + c[3]) / 3 + Fraction(2, 3) * tail(4)))
    return cases


def suite_symmetry_k2(max_n: int = 5, trials: int = 2, seed: int = 0) -> SuiteReport:
    """k = 2 normal strategies: R(T_y, x) = R(T_x, y) for all patterns, plus the seven closed forms."""
    rng = random.Random(seed)
    rep = SuiteReport("symmetry-k2")
    for n in range(2, max_n + 1):
        patterns = enumerate_allocations(n, 2)
        mixtures = {y: normal_k2_pattern(n, y) for y in patterns}
        for _ in range(trials):
            costs = random_costs(rng, n)
            table = {(y, x): sum(p * _fast_seq_regret(s, x, costs) for s, p in mixtures[y].items())
                     for y in patterns for x in patterns}
            for y, x in itertools.combinations(patterns, 2):
                rep.check(table[y, x] == table[x, y],
                          {"n": n, "costs": [str(v) for v in costs], "y": y, "x": x,
                           "R(T_y,x)": str(table[y, x]), "R(T_x,y)": str(table[x, y])})
            for label, y, x, closed in k2_pattern_cases(costs):
                got = table[y, x]
                ok = got == table[x, y] and (closed is None or got == closed)
                rep.check(ok, {"case": label, "n": n, "got": str(got), "closed": str(closed)})
    return rep


# ------------------------------------------------------------ reduction matrix


def suite_reduction_matrix(budget: int = 20, seed: int = 0) -> SuiteReport:
    """The reduction matrix has value V([n],k) and the column weights are optimal for it."""
    rng = random.Random(seed)
    rep = SuiteReport("reduction-matrix")
    for trial in range(budget):
        n, k = rng.randint(2, 4), rng.randint(1, 3)
        costs = random_costs(rng, n)
        mat = regret_reduction_matrix(costs, k)
        target = value_multi_regret(costs, k)
        value, _, _ = solve_matrix_game(mat)
        weights = regret_column_weights(costs, k)
        rows = [sum(w * a for w, a in zip(weights, row)) for row in mat]
        ok = (value == target and all(w >= 0 for w in weights) and sum(weights) == 1
              and all(r == target for r in rows))
        rep.check(ok, {"costs": [str(c) for c in costs], "k": k, "lp": str(value),
                       "V": str(target), "rows": [str(r) for r in rows]})
    return rep


# --------------------------------------------------------- closed forms


CLOSED_FORM_REGIMES = ("equal-cost", "n2-cost", "multi-regret", "single-regret-k=n-1")


def closed_form_instance(regime: str, rng: random.Random) -> Instance:
    if regime == "equal-cost":
        n, k = rng.randint(1, 4), rng.randint(1, 4)
        c = Fraction(rng.randint(1, 9))
        return Instance((c,) * n, k, "multi-cost")
    if regime == "n2-cost":
        costs = random_costs(rng, 2)
        return Instance(costs, rng.randint(1, 4), "multi-cost")
    if regime == "multi-regret":
        n = rng.randint(1, 4)
        return Instance(random_costs(rng, n), rng.randint(1, 3), "multi-regret")
    if regime == "single-regret-k=n-1":
        n = rng.randint(2, 5)
        return Instance(random_costs(rng, n), n - 1, "single-regret")
    raise ValueError(f"unknown regime {regime!r}")


def suite_closed_form(budget: int = 25, seed: int = 0, regimes=CLOSED_FORM_REGIMES) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("closed-form")
    for regime in regimes:
        for _ in range(budget):
            inst = closed_form_instance(regime, rng)
            expected, formula = closed_form_value(inst)
            got = solve_game(inst.costs, inst.k, inst.variant).value
            rep.check(got == expected, {"regime": regime, **inst.to_json(), "solver": str(got),
                                        "closed_form": str(expected), "formula": formula})
    return rep


# ---------------------------------------------------------------- oracle


def suite_oracle(seed: int = 0, hiders_per_case: int = 4) -> SuiteReport:
    """Best response equals brute-force enumeration of pure trees for n = 2, k <= 2."""
    rng = random.Random(seed)
    rep = SuiteReport("oracle")
    for look in ("multi", "single"):
        for payoff in ("cost", "regret"):
            variant = GameVariant(look, payoff)
            for k in (1, 2):
                costs = random_costs(rng, 2)
                allocs = enumerate_allocations(2, k, look)
                hiders = [HiderMixed.point(x, look) for x in allocs]
                for _ in range(hiders_per_case):
                    w = [Fraction(rng.randint(0, 5)) for _ in allocs]
                    if not any(w):
                        w[0] = Fraction(1)
                    hiders.append(HiderMixed({x: wi / sum(w) for x, wi in zip(allocs, w)}, look))
                for hider in hiders:
                    dp, _ = best_response(hider, costs, variant)
                    brute = exhaustive_best_response(hider, costs, variant)
                    rep.check(dp == brute, {"variant": str(variant), "costs": [str(c) for c in costs],
                                            "hider": {str(x): str(p) for x, p in hider.items()},
                                            "dp": str(dp), "enumeration": str(brute)})
    return rep


SUITES = {
    "equalizer": suite_equalizer,
    "symmetry-k2": suite_symmetry_k2,
    "edge-permutation": suite_edge_permutation,
    "overlap-regret": suite_overlap_regret,
    "reduction-matrix": suite_reduction_matrix,
    "closed-form": suite_closed_form,
    "oracle": suite_oracle,
}


def run_suite(name: str, budget: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    fn = SUITES[name]
    if budget is None or name in ("edge-permutation", "overlap-regret", "oracle"):
        return fn(seed=seed)
    if name == "symmetry-k2":
        return fn(trials=budget, seed=seed)
    return fn(budget=budget, seed=seed)


# ------------------------------------------------------- reference values

REFERENCE_TOL = 5e-5


@dataclass
class ReproRow:
    name: str
    variant: str
    costs: tuple
    k: int
    expected: object
    computed: object = None
    support_ok: bool = True
    note: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return (self.computed is not None and abs(float(self.computed) - float(self.expected)) <= REFERENCE_TOL
                and self.support_ok)


def reference_rows():
    """Worked instances: (name, variant, costs, k, reported value, support check)."""
    return [
        ("equal costs n=k=2", "multi-cost", ("1", "1"), 2, Fraction(8, 3), None),
        ("set-aside n=2 (10,1), k=2", "multi-cost", ("10", "1"), 2, Fraction(221, 11), None),
        ("multi-cost (10,9,1,1)", "multi-cost", ("10", "9", "1", "1"), 2, 25.9515,
         ("exclude", [(0, 0, 2, 0), (0, 0, 1, 1), (0, 0, 0, 2)])),
        ("multi-cost (100,10,1,0.99)", "multi-cost", ("100", "10", "1", "0.99"), 2, 201.0972,
         ("exact", [(2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)])),
        ("prefill k=n-1 (100,100,1)", "single-regret", ("100", "100", "1"), 2, 50, None),
        ("single-regret (100,10,1,0.99)", "single-regret", ("100", "10", "1", "0.99"), 2, 10.0405,
         ("exclude", [(1, 1, 0, 0)])),
        ("single-regret (100,10,9.9,1)", "single-regret", ("100", "10", "9.9", "1"), 2, 17.4229,
         ("exact", [(1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)])),
    ]


def reproduce_reference_values(exact: bool = False) -> list[ReproRow]:
    out = []
    for name, variant, costs, k, expected, support in reference_rows():
        nums = [Fraction(c) if exact else float(c) for c in costs]
        row = ReproRow(name, variant, tuple(costs), k, expected)
        start = time.perf_counter()
        res = solve_game(nums, k, variant)
        row.seconds = time.perf_counter() - start
        row.computed = res.value
        rep = check_equalizing_property(res.hider_mixed, nums)
        if support is not None:
            kind, listed = support
            listed = {tuple(x) for x in listed}
            have = set(rep.support)
            if kind == "exclude":
                row.support_ok = have == set(res.hider_mixed.probs) and not (have & listed) and \
                    have == set(enumerate_allocations(len(nums), k, GameVariant.parse(variant).look_mode)) - listed
            else:
                row.support_ok = have == listed
            row.support_ok = row.support_ok and rep.equalizing
        row.note = f"support={sorted(rep.support, reverse=True)}; equalizing={rep.equalizing}"
        out.append(row)
    return out
