"""Complete homogeneous and elementary symmetric polynomials of cost prefixes.

``T_j([m])`` sums every degree-``j`` monomial in ``c_1..c_m``;
``S_j([m])`` sums products over ``j``-subsets of ``c_1..c_m``. Both are
built from the prefix recurrences

    T_j([m]) = c_m T_{j-1}([m]) + T_j([m-1])
    S_j([m]) = c_m S_{j-1}([m-1]) + S_j([m-1])

so tables come out exact under ``Fraction`` input. In float mode the values
grow combinatorially; keep ``n * k`` to a few dozen.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

COMPLETE = "complete"
ELEMENTARY = "elementary"


@dataclass(frozen=True)
class SymTable:
    """``table[j][m]`` holds T_j([m]) or S_j([m]) for 0 <= j <= k_max, 0 <= m <= n."""

    kind: str
    table: tuple

    @property
    def k_max(self) -> int:
        return len(self.table) - 1

    @property
    def n(self) -> int:
        return len(self.table[0]) - 1

    def __call__(self, j: int, m: int | None = None):
        if m is None:
            m = self.n
        if j < 0:
            return 0
        if j > self.k_max:
            raise IndexError(f"degree {j} beyond table k_max={self.k_max}")
        return self.table[j][m]


def sym_table(costs: Sequence, k_max: int, kind: str = COMPLETE) -> SymTable:
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    if kind not in (COMPLETE, ELEMENTARY):
        raise ValueError(f"unknown kind {kind!r}")
    n = len(costs)
    one = costs[0] ** 0 if n else 1
    rows = [[one] * (n + 1)]
    for j in range(1, k_max + 1):
        row = [0 * one] * (n + 1)
        for m in range(1, n + 1):
            c = costs[m - 1]
            if kind == COMPLETE:
                # same prefix, one degree lower
                row[m] = c * rows[j - 1][m] + row[m - 1]
            else:
                row[m] = c * rows[j - 1][m - 1] + row[m - 1]
        rows.append(row)
    return SymTable(kind, tuple(tuple(r) for r in rows))


def complete_homogeneous(costs: Sequence, k: int, m: int | None = None):
    """T_k of the first ``m`` costs (all of them by default); T_{-1} = 0."""
    if k < 0:
        return 0
    return sym_table(costs, k, COMPLETE)(k, m)


def elementary_symmetric(costs: Sequence, k: int, m: int | None = None):
    """S_k of the first ``m`` costs; zero when k exceeds the prefix length."""
    if k < 0:
        return 0
    return sym_table(costs, k, ELEMENTARY)(k, m)
