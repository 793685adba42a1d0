"""Closed-form game values, threshold cutoffs and small payoff matrices.

Notation used in the names below:

* ``U([n], k) = k T_{k+1} / T_k``: cost of any search against the multi-look
  equalizing hider.
* ``V([n], k) = T_1 - T_{k+1} / T_k``: the multi-look regret value.
* ``W([n], k) = k S_{k+1} / S_k``: regret of any search against the
  single-look equalizing hider.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import (InvalidInstance, InvalidOrder, Instance, as_costs, is_exact)
from .symfun import COMPLETE, ELEMENTARY, sym_table


class NoClosedForm(ValueError):
    """The instance lies outside every regime with a known closed-form value."""


@dataclass(frozen=True)
class ThresholdResult:
    b: int
    sequence: tuple
    value: object


def _costs(costs):
    return as_costs(costs)


def value_multi_cost_equalizing(costs: Sequence, k: int):
    """U([n], k): expected cost of any searcher against the multi-look equalizer."""
    if k < 0:
        raise InvalidInstance("k must be non-negative")
    if k == 0:
        return 0
    costs = _costs(costs)
    t = sym_table(costs, k + 1, COMPLETE)
    return k * t(k + 1) / t(k)


def value_equal_cost(n: int, k: int) -> Fraction:
    """Value of the multi-look cost game with all costs equal to one."""
    if n < 1 or k < 1:
        raise InvalidInstance("need n >= 1 and k >= 1")
    return (n + k) * (1 - Fraction(1, k + 1))


def value_multi_regret(costs: Sequence, k: int):
    """V([n], k); also defined (as zero) for k = 0."""
    if k < 0:
        raise InvalidInstance("k must be non-negative")
    costs = _costs(costs)
    t = sym_table(costs, k + 1, COMPLETE)
    return t(1) - t(k + 1) / t(k)


def value_single_regret(costs: Sequence, k: int):
    """W([n], k) = k S_{k+1} / S_k, zero when every box holds a ball."""
    costs = _costs(costs)
    if not 0 <= k <= len(costs):
        raise InvalidInstance(f"single-look needs 0 <= k <= n, got k={k}, n={len(costs)}")
    if k == 0:
        return 0 * costs[0]
    s = sym_table(costs, k + 1, ELEMENTARY)
    return k * s(k + 1) / s(k)


def fm(m: int, r):
    """f_m(r) = -(m - 1) + r + r^2 + ... + r^m."""
    return -(m - 1) + sum(r ** i for i in range(1, m + 1))


def root_fm(m: int, tol: float = 1e-12) -> float:
    """The root of f_m in [0, 1), by bisection. ``m = 1`` gives 0."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if fm(m, mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def cutoff_b_multi_n2(c1, c2, k: int) -> ThresholdResult:
    """Number of balls ``b`` the n=2 hider keeps equalizing; the rest go to box 1.

    ``b`` is the largest m in 1..k with r_m <= c2/c1 (with r_1 = 0). The
    comparison is done through the sign of f_m(c2/c1), which is exact for
    rational costs. The sequence holds float roots r_1..r_k for display.
    """
    c1, c2 = _costs((c1, c2))
    if c1 < c2:
        raise InvalidOrder(f"need c1 >= c2, got c1={c1}, c2={c2}")
    if k < 1:
        raise InvalidInstance("k must be >= 1")
    ratio = c2 / c1
    b = 1
    for m in range(2, k + 1):
        if fm(m, ratio) >= 0:
            b = m
        else:
            break
    # q_b(0) >= 0 is what the cutoff guarantees.
    t = sym_table((c1, c2), b, COMPLETE)
    assert 1 - b * c1 ** b / t(b) >= 0
    value = (k - b) * c1 + value_multi_cost_equalizing((c1, c2), b)
    return ThresholdResult(b, tuple(root_fm(m) for m in range(1, k + 1)), value)


def single_thresholds(costs: Sequence) -> tuple:
    """a_m = sum_{i<m} 1/c_i - (m-2)/c_m for m = 2..n (costs sorted decreasing)."""
    costs = _costs(costs)
    _require_decreasing(costs)
    out = []
    inv_sum = 0 * costs[0]
    for m in range(2, len(costs) + 1):
        inv_sum += 1 / costs[m - 2]
        out.append(inv_sum - (m - 2) / costs[m - 1])
    return tuple(out)


def cutoff_b_single(costs: Sequence) -> ThresholdResult:
    """Cutoff for single-look regret with k = n - 1 (costs sorted decreasing).

    Boxes b+1..n surely hold a ball; the value is W([b], b-1).
    """
    costs = _costs(costs)
    if len(costs) < 2:
        raise InvalidInstance("need at least two boxes")
    a = single_thresholds(costs)
    b = 2
    for m, am in enumerate(a, start=2):
        if am >= 0:
            b = m
    return ThresholdResult(b, a, value_single_regret(costs[:b], b - 1))


def _require_decreasing(costs):
    if any(costs[i] < costs[i + 1] for i in range(len(costs) - 1)):
        raise InvalidOrder(f"costs must be sorted in decreasing order: {costs}")


def canonical_order(costs: Sequence) -> tuple[tuple, tuple]:
    """Sort costs decreasingly (stable). Returns ``(sorted_costs, perm)``
    where ``sorted_costs[i] == costs[perm[i]]``."""
    costs = tuple(costs)
    perm = tuple(sorted(range(len(costs)), key=lambda i: -costs[i]))
    return tuple(costs[i] for i in perm), perm


def n2_cost_matrix_entry(i: int, j: int, c1, c2, k: int):
    """Cost when the hider puts ``i`` balls in box 1 and the searcher opens
    box 1 at most ``j`` times before turning to box 2."""
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValueError("need 0 <= i, j <= k")
    base = i * c1 + (k - i) * c2
    if i < j:
        return base + c1
    if i > j:
        return base + c2
    return base


def n2_cost_matrix(c1, c2, k: int) -> list[list]:
    return [[n2_cost_matrix_entry(i, j, c1, c2, k) for j in range(k + 1)] for i in range(k + 1)]


def regret_reduction_matrix(costs: Sequence, k: int) -> list[list]:
    """The (k+1) x (k+1) game where the hider picks how many balls go in the
    last box (row t) and the searcher picks how many times at most to open
    it first (column s)."""
    costs = _costs(costs)
    n = len(costs)
    if n < 2 or k < 1:
        raise InvalidInstance("need n >= 2 and k >= 1")
    rest = costs[:-1]
    cn = costs[-1]
    rest_total = sum(rest)
    sub = [value_multi_regret(rest, k - t) for t in range(k + 1)]
    rows = []
    for t in range(k + 1):
        row = []
        for s in range(k + 1):
            if t < s:
                row.append(cn + sub[t])
            elif t == s:
                row.append(sub[t])
            else:
                row.append(rest_total)
        rows.append(row)
    return rows


def regret_column_weights(costs: Sequence, k: int) -> list:
    """Probabilities P_0..P_k of opening the last box at most s times.

    With A_j = T_j([n]) / T_{j+1}([n-1]) and A_{-1} = 0, P_s is
    (A_{k-s} - A_{k-s-1}) / A_k, which telescopes to one.
    """
    costs = _costs(costs)
    n = len(costs)
    if n < 2:
        raise InvalidInstance("need n >= 2")
    t_all = sym_table(costs, k + 1, COMPLETE)
    t_rest = sym_table(costs[:-1], k + 1, COMPLETE)

    def a(j):
        if j < 0:
            return 0
        return t_all(j) / t_rest(j + 1)

    total = a(k)
    return [(a(k - s) - a(k - s - 1)) / total for s in range(k + 1)]


def closed_form_value(instance: Instance) -> tuple[object, str]:
    """Closed-form value and a short description of the formula used.

    Raises ``NoClosedForm`` when no known formula covers the instance.
    """
    costs, k, n = instance.costs, instance.k, instance.n
    variant = instance.variant
    if k == 0:
        return 0 * costs[0], "no balls"
    if variant.look_mode == "multi" and variant.payoff_mode == "regret":
        return value_multi_regret(costs, k), "V([n],k) = T_1 - T_{k+1}/T_k"
    if variant.look_mode == "multi":
        if n == 1:
            return k * costs[0], "k * c_1 (single box)"
        if all(c == costs[0] for c in costs):
            scale = costs[0]
            if is_exact(costs):
                return scale * value_equal_cost(n, k), "c * (n+k)(1 - 1/(k+1))"
            return scale * float(value_equal_cost(n, k)), "c * (n+k)(1 - 1/(k+1))"
        if n == 2:
            hi, lo = max(costs), min(costs)
            res = cutoff_b_multi_n2(hi, lo, k)
            return res.value, f"(k-b) c_1 + U([2],b) with b={res.b}"
        raise NoClosedForm("multi-look cost game with n >= 3 unequal costs has no closed form")
    if variant.payoff_mode == "regret":
        if k == n:
            return 0 * costs[0], "W([n],n) = 0"
        if k == 1 or all(c == costs[0] for c in costs):
            return value_single_regret(costs, k), "W([n],k) = k S_{k+1}/S_k"
        if k == n - 1:
            ordered, _ = canonical_order(costs)
            res = cutoff_b_single(ordered)
            return res.value, f"W([b],b-1) with b={res.b}"
        raise NoClosedForm("single-look regret game has a closed form only for k = 1, k >= n-1 "
                           "or equal costs")
    raise NoClosedForm("single-look cost game has no closed form")
