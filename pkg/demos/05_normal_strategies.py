"""Fixed search sequences for k = 2.

A normal strategy draws a whole sequence of opens up front and only skips
boxes already shown empty. For k = 2 a mixture built from one small family
per ending pattern y is optimal; the key fact is that each family's regret
against x equals the regret of x's family against y.
"""

import numpy as np

from boxsearch import enumerate_allocations, normal_expected_regret, value_multi_regret
from boxsearch.strategies import normal_k2_pattern, normal_k2_strategy

costs = (5.0, 4.0, 2.0, 1.0)
n = len(costs)
patterns = enumerate_allocations(n, 2)
R = np.array([[float(normal_expected_regret(normal_k2_pattern(n, y), x, costs)) for x in patterns]
              for y in patterns])
print("regret table is symmetric:", np.allclose(R, R.T))

mix = normal_k2_strategy(costs)
worst = max(float(normal_expected_regret(mix, x, costs)) for x in patterns)
print(f"{len(mix.mixture)} sequences, worst-case regret {worst:.6f}, V = {value_multi_regret(costs, 2):.6f}")
