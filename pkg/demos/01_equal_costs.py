"""Two boxes, two balls, every open costs 1.

The hider's uniform mixture over (2,0), (1,1), (0,2) makes every searcher
pay 8/3 on average. The obvious reply, picking uniformly among boxes that
may still hold a ball, does worse when both balls share a box.
"""

from fractions import Fraction

from boxsearch import (evaluate, evaluate_all, searcher_equal_cost, searcher_uniform_adaptive,
                       solve_game, value_equal_cost)

costs = (Fraction(1), Fraction(1))

print("value from the formula:", value_equal_cost(2, 2))

naive = searcher_uniform_adaptive()
for x in [(2, 0), (1, 1)]:
    print(f"uniform searcher vs {x}:", evaluate(naive, x, costs).expected_payoff)

# the optimal policy commits to re-opening a box that paid off with probability 2/3
best = searcher_equal_cost(2, 2)
res = evaluate_all(best, costs, 2)
print("equal-cost policy, every allocation:", dict(res.breakdown))

sol = solve_game(costs, 2)
print("double oracle value:", sol.value, "after", sol.iterations, "iterations")
for x, p in sol.hider_mixed.items():
    print("  hider plays", x, "with probability", p)
