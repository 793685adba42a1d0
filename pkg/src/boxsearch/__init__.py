"""Solvers for zero-sum box-search games.

A hider distributes ``k`` balls among ``n`` boxes with search costs
``c_1..c_n``; a searcher opens boxes one at a time until every ball is found.
Four variants: multi-look (any number of balls per box, one ball found per
open) or single-look (at most one ball per box), paying either total search
cost or regret (cost of opens that reveal an empty box).
"""

from .model import (MULTI_COST, MULTI_REGRET, SINGLE_COST, SINGLE_REGRET, CostVector,
                    GameVariant, HiderMixed, InfoState, Instance, InvalidInstance, InvalidOrder,
                    PolicyViolation, clairvoyant_cost, enumerate_allocations, load_instance)
from .symfun import complete_homogeneous, elementary_symmetric, sym_table
from .values import (NoClosedForm, closed_form_value, cutoff_b_multi_n2, cutoff_b_single,
                     n2_cost_matrix_entry, regret_column_weights, regret_reduction_matrix,
                     root_fm, value_equal_cost, value_multi_cost_equalizing, value_multi_regret,
                     value_single_regret)
from .strategies import (NormalStrategy, SearcherPolicy, hider_equalizing_multi,
                         hider_equalizing_single, hider_prefill_single,
                         hider_restricted_equalizing, hider_set_aside_n2, searcher_equal_cost,
                         searcher_multi_regret, searcher_n2_cost, searcher_normal_k1,
                         searcher_normal_k2, searcher_random, searcher_single_regret_full,
                         searcher_uniform_adaptive)
from .engine import (EvalResult, evaluate, evaluate_all, evaluate_mixed,
                     normal_expected_regret, sequence_regret)
from .matrixgame import MatrixGame, solve_matrix_game
from .solver import (DecisionTreePolicy, SolveResult, best_response, check_equalizing_property,
                     solve_game)

__all__ = [
    "MULTI_COST",
    "MULTI_REGRET",
    "SINGLE_COST",
    "SINGLE_REGRET",
    "CostVector",
    "GameVariant",
    "HiderMixed",
    "InfoState",
    "Instance",
    "InvalidInstance",
    "InvalidOrder",
    "PolicyViolation",
    "clairvoyant_cost",
    "enumerate_allocations",
    "load_instance",
    "complete_homogeneous",
    "elementary_symmetric",
    "sym_table",
    "NoClosedForm",
    "closed_form_value",
    "cutoff_b_multi_n2",
    "cutoff_b_single",
    "n2_cost_matrix_entry",
    "regret_column_weights",
    "regret_reduction_matrix",
    "root_fm",
    "value_equal_cost",
    "value_multi_cost_equalizing",
    "value_multi_regret",
    "value_single_regret",
    "NormalStrategy",
    "SearcherPolicy",
    "hider_equalizing_multi",
    "hider_equalizing_single",
    "hider_prefill_single",
    "hider_restricted_equalizing",
    "hider_set_aside_n2",
    "searcher_equal_cost",
    "searcher_multi_regret",
    "searcher_n2_cost",
    "searcher_normal_k1",
    "searcher_normal_k2",
    "searcher_random",
    "searcher_single_regret_full",
    "searcher_uniform_adaptive",
    "EvalResult",
    "evaluate",
    "evaluate_all",
    "evaluate_mixed",
    "normal_expected_regret",
    "sequence_regret",
    "MatrixGame",
    "solve_matrix_game",
    "DecisionTreePolicy",
    "SolveResult",
    "best_response",
    "check_equalizing_property",
    "solve_game",
]

__version__ = "0.1.0"
