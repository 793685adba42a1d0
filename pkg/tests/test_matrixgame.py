from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxsearch.matrixgame import MatrixGame, _bland_exact, guarantees, solve_matrix_game

small_int_matrices = st.integers(1, 5).flatmap(
    lambda m: st.lists(st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=1, max_size=5))


def test_matching_pennies():
    v, row, col = solve_matrix_game([[1, -1], [-1, 1]])
    assert v == 0 and row == [Fraction(1, 2)] * 2 and col == [Fraction(1, 2)] * 2


def test_rock_paper_scissors_float():
    v, row, col = solve_matrix_game([[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]])
    assert v == pytest.approx(0, abs=1e-9)
    assert row == pytest.approx([1 / 3] * 3)


def test_two_by_two_closed_form():
    a, b, c, d = 3, 1, 0, 2
    v, row, _ = solve_matrix_game([[a, b], [c, d]])
    assert v == Fraction(a * d - b * c, a + d - b - c)
    assert row[0] == Fraction(d - c, a + d - b - c)


def test_saddle_point():
    v, row, col = solve_matrix_game(MatrixGame([[4, 5], [2, 7]]))
    assert v == 4 and row == [1, 0] and col == [1, 0]


@settings(max_examples=150)
@given(small_int_matrices)
def test_exact_solution_is_certified(a):
    v, row, col = solve_matrix_game(a)
    assert all(p >= 0 for p in row) and sum(row) == 1
    assert all(q >= 0 for q in col) and sum(col) == 1
    assert guarantees(a, row, col) == (v, v)
    assert _bland_exact(a)[0] == v


@settings(max_examples=60)
@given(small_int_matrices)
def test_float_matches_exact(a):
    v, _, _ = solve_matrix_game(a)
    vf, row, col = solve_matrix_game([[float(x) for x in r] for r in a])
    assert vf == pytest.approx(float(v), abs=1e-8)
    lo, hi = guarantees(a, row, col)
    assert lo == pytest.approx(float(v), abs=1e-7) and hi == pytest.approx(float(v), abs=1e-7)


def test_malformed_matrices():
    with pytest.raises(ValueError):
        MatrixGame([[1, 2], [3]])
    with pytest.raises(ValueError):
        MatrixGame([])
