"""Shared hypothesis strategies and brute-force oracles."""

import itertools
from fractions import Fraction
from math import prod

from hypothesis import strategies as st


def rational(lo=1, hi=40, max_den=4):
    return st.builds(lambda a, d: Fraction(a, d), st.integers(lo * max_den, hi * max_den),
                     st.integers(1, max_den)).filter(lambda f: f > 0)


def cost_lists(min_n=1, max_n=4):
    return st.lists(rational(), min_size=min_n, max_size=max_n).map(tuple)


def brute_complete(costs, k):
    """Sum of all degree-k monomials, one multiset at a time."""
    return sum((prod(c) for c in itertools.combinations_with_replacement(costs, k)), Fraction(0))


def brute_elementary(costs, k):
    return sum((prod(c) for c in itertools.combinations(costs, k)), Fraction(0))
