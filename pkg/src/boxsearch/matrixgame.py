"""Zero-sum matrix games by linear programming.

The row player maximizes, the column player minimizes. Float inputs go
to scipy's HiGHS. Exact inputs (Fractions / ints) use the
float solution only as a guess at the supports: the equalizing system on
those supports is solved in rationals and optimality checked exactly, with
a dense rational simplex (Bland's rule) as the fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .model import is_exact


@dataclass
class MatrixGame:
    payoffs: list
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    def __post_init__(self):
        rows = [list(r) for r in self.payoffs]
        if not rows or not rows[0]:
            raise ValueError("matrix game needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("payoff matrix must be rectangular")
        self.payoffs = rows

    @property
    def shape(self):
        return len(self.payoffs), len(self.payoffs[0])


def _simplex_max(a: list[list[Fraction]]):
    """Maximize sum(w) subject to a w <= 1, w >= 0, for a strictly positive ``a``.

    Returns (w, u): the primal optimum and the dual prices of the rows.
    """
    m, n = len(a), len(a[0])
    one, zero = Fraction(1), Fraction(0)
    # tableau columns: n structural, m slack, then rhs
    tab = [list(a[i]) + [one if j == i else zero for j in range(m)] + [one] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs c_j - z_j
    red = [one] * n + [zero] * m
    while True:
        enter = next((j for j in range(n + m) if red[j] > 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise RuntimeError("unbounded LP; payoff matrix was not positive")
        piv = tab[leave][enter]
        prow = [v / piv for v in tab[leave]]
        tab[leave] = prow
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * pv for v, pv in zip(tab[i], prow)]
        f = red[enter]
        red = [r - f * pv for r, pv in zip(red, prow[:-1])]
        basis[leave] = enter
    w = [zero] * n
    for i, j in enumerate(basis):
        if j < n:
            w[j] = tab[i][-1]
    u = [-red[n + i] for i in range(m)]
    return w, u


def _bland_exact(a):
    lo = min(min(r) for r in a)
    shift = 1 - lo
    shifted = [[Fraction(v) + shift for v in r] for r in a]
    w, u = _simplex_max(shifted)
    total = sum(w)
    v = 1 / total
    col = [wj * v for wj in w]
    row = [ui * v for ui in u]
    return v - shift, row, col


def _linear_solution(m, rhs):
    """Some exact solution of m z = rhs (free variables set to 0), or None."""
    rows = [list(r) + [b] for r, b in zip(m, rhs)]
    ncol = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * pv for v, pv in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in rows[r:]):
        return None
    z = [Fraction(0)] * ncol
    for i, c in enumerate(pivots):
        z[c] = rows[i][-1]
    return z


def _support_strategy(a, support, active):
    """Mixture on ``support`` making every ``active`` line pay the same; returns (mix, value)."""
    # unknowns: the mixture on the support, then the common payoff
    m = [[Fraction(a[i][j]) for i in support] + [Fraction(-1)] for j in active]
    m.append([Fraction(1)] * len(support) + [Fraction(0)])
    z = _linear_solution(m, [Fraction(0)] * len(active) + [Fraction(1)])
    if z is None:
        return None
    return z[:-1], z[-1]


def _solve_exact(a):
    """Rational solution: supports from the float LP, confirmed exactly, else full simplex."""
    a = [[Fraction(v) for v in r] for r in a]
    m, n = len(a), len(a[0])
    try:
        _, row_f, col_f = _solve_float([[float(v) for v in r] for r in a])
    except RuntimeError:
        return _bland_exact(a)
    for tol in (1e-9, 1e-7, 1e-5):
        rs = [i for i in range(m) if row_f[i] > tol]
        cs = [j for j in range(n) if col_f[j] > tol]
        at = [list(c) for c in zip(*a)]
        r_sol = _support_strategy(a, rs, cs)
        c_sol = _support_strategy(at, cs, rs)
        if r_sol is None or c_sol is None:
            continue
        row = [Fraction(0)] * m
        col = [Fraction(0)] * n
        for i, p in zip(rs, r_sol[0]):
            row[i] = p
        for j, q in zip(cs, c_sol[0]):
            col[j] = q
        if min(row) < 0 or min(col) < 0:
            continue
        lo, hi = guarantees(a, row, col)
        if lo == hi:
            return lo, row, col
    return _bland_exact(a)


def _solve_float(a):
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    shift = 1.0 - a.min()
    b = a + shift
    # column player: max sum w, b w <= 1
    res_c = linprog(-np.ones(n), A_ub=b, b_ub=np.ones(m), bounds=(0, None), method="highs")
    # row player: min sum u, b^T u >= 1
    res_r = linprog(np.ones(m), A_ub=-b.T, b_ub=-np.ones(n), bounds=(0, None), method="highs")
    if res_c.status != 0 or res_r.status != 0:
        raise RuntimeError(f"LP failed: {res_c.message} / {res_r.message}")
    v = 1.0 / res_c.x.sum()
    col = np.clip(res_c.x * v, 0, None)
    row = np.clip(res_r.x / res_r.x.sum(), 0, None)
    return v - shift, list(row / row.sum()), list(col / col.sum())


def solve_matrix_game(game: "MatrixGame | Sequence[Sequence]", exact: bool | None = None):
    """Value and optimal mixed strategies ``(value, row_mixed, col_mixed)``.

    ``exact=None`` picks rational arithmetic when every entry is exact.
    """
    a = game.payoffs if isinstance(game, MatrixGame) else [list(r) for r in game]
    MatrixGame(a)
    if exact is None:
        exact = all(is_exact(r) for r in a)
    return _solve_exact(a) if exact else _solve_float(a)


def guarantees(a, row=None, col=None):
    """Worst-case payoffs: (min over columns of row^T A, max over rows of A col)."""
    lo = hi = None
    if row is not None:
        lo = min(sum(r * a[i][j] for i, r in enumerate(row)) for j in range(len(a[0])))
    if col is not None:
        hi = max(sum(c * a[i][j] for j, c in enumerate(col)) for i in range(len(a)))
    return lo, hi
