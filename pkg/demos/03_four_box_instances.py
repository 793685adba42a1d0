"""Four boxes, two balls: what the optimal hider looks like.

Without a closed form we solve each game exactly. In every case the
hider's probabilities are proportional to prod c_i^x_i on its support,
but which allocations make the support is not a simple ranking.
"""

import numpy as np

from boxsearch import check_equalizing_property, solve_game

instances = [
    ((10.0, 9.0, 1.0, 1.0), "multi-cost"),
    ((100.0, 10.0, 1.0, 0.99), "multi-cost"),
    ((100.0, 10.0, 1.0, 0.99), "single-regret"),
    ((100.0, 10.0, 9.9, 1.0), "single-regret"),
]

for costs, variant in instances:
    res = solve_game(costs, 2, variant)
    rep = check_equalizing_property(res.hider_mixed, costs)
    print(f"{variant} {costs}: value {res.value:.4f} ({res.iterations} iterations)")
    weights = np.array([np.prod(np.power(costs, x)) for x in rep.support])
    probs = np.array([res.hider_mixed[x] for x in rep.support])
    print("  p(x) / prod c^x, rescaled:", np.round(probs / weights / (probs / weights).max(), 8))
    print("  left out:", rep.missing)
