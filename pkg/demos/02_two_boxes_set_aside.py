"""Two boxes with very different costs.

With c = (10, 1) and k = 2 the equalizing hider only guarantees
U = 2222/111 ~ 20.02. Putting one ball in the dear box for sure and
equalizing the other does better: 10 + U([2],1) = 221/11 ~ 20.09.
The number of balls left to the equalizer is the largest m whose
threshold r_m is at most c2/c1.
"""

from boxsearch import (best_response, hider_equalizing_multi, hider_set_aside_n2, searcher_n2_cost,
                       evaluate_all, solve_game, value_multi_cost_equalizing)
from boxsearch.values import cutoff_b_multi_n2, root_fm

c1, c2, k = 10, 1, 2
print("equalizer guarantees  ", float(value_multi_cost_equalizing((c1, c2), k)))
print("set-aside guarantees  ", float(best_response(hider_set_aside_n2(c1, c2, k), (c1, c2))[0]))

print("\nthresholds r_m:", ", ".join(f"{root_fm(m):.4f}" for m in range(1, 7)))
for ratio in (0.05, 0.5, 0.7, 0.9):
    res = cutoff_b_multi_n2(1, ratio, 6)
    print(f"c2/c1 = {ratio:4}: equalize {res.b} of 6 balls, value {float(res.value):.4f}")

res = cutoff_b_multi_n2(c1, c2, k)
worst = evaluate_all(searcher_n2_cost(c1, c2, k), (c1, c2), k).expected_payoff
print(f"\n(10,1), k=2: b={res.b}, value {res.value}, searcher worst case {worst}")
print("solver agrees:", solve_game((c1, c2), k).value)

h = hider_equalizing_multi((c1, c2), k)
print("best reply to the plain equalizer still pays", best_response(h, (c1, c2))[0])
