"""Multi-look search with regret.

Regret only charges the opens that come up empty. The value is
V = T_1 - T_{k+1}/T_k, the equalizer makes every searcher pay exactly V,
and a recursive searcher guarantees it: it first decides how many times at
most to open the last box, with the weights of a small (k+1)x(k+1) game.
"""

from fractions import Fraction

from boxsearch import (evaluate_all, evaluate_mixed, hider_equalizing_multi, searcher_multi_regret,
                       searcher_random, value_multi_regret)
from boxsearch.matrixgame import solve_matrix_game
from boxsearch.values import regret_column_weights, regret_reduction_matrix

costs = tuple(Fraction(c) for c in (10, 9, 1, 1))
k = 2
V = value_multi_regret(costs, k)
print("V =", V, "~", float(V))

hider = hider_equalizing_multi(costs, k)
for seed in range(3):
    print(f"random searcher {seed} vs equalizer:", evaluate_mixed(searcher_random(seed), hider, costs,
                                                                   "multi-regret").expected_payoff)

worst = evaluate_all(searcher_multi_regret(costs, k), costs, k, "multi-regret")
print("recursive searcher, worst allocation:", worst.expected_payoff)

mat = regret_reduction_matrix(costs, k)
print("\nreduction game (rows: balls in the last box, cols: planned opens of it)")
for row in mat:
    print("  ", [str(a) for a in row])
print("its value:", solve_matrix_game(mat)[0])
print("column weights:", [str(w) for w in regret_column_weights(costs, k)])
