"""Minimum sum coloring and maximum k-colorable subgraphs on chordal graphs."""

__version__ = "0.1.0"

from .chordal import (NotAPeoError, NotChordalError, PerfectEliminationOrder, clique_number,
                      greedy_color, is_chordal, lex_bfs, max_weight_independent_set,
                      recognize_chordal, verify_peo)
from .cliquetree import CliqueTreeRepresentation, build_clique_tree
from .gen import GenSpec, generate
from .graph import Coloring, ColoringError, GraphFormatError, WeightedGraph, parse_graph, read_graph
from .mkcs import (DpTooLargeError, MkcsResult, exact_mkcs_dp, greedy_max_coverage_mkcs, mkcs_ptas,
                   round_mkcs, round_mkcs_derandomized, solve_kcolor_lp)
from .msc import (ConfigColumn, ConfigLpSolution, DualPrices, GeometricSchedule, coverage_concat_msc,
                  greedy_msc_4approx, msc_approx, msc_round, msc_round_derandomized, solve_config_lp)
from .oracle import OracleBudget, brute_mkcs, brute_msc
from .ratio import optimal_c, ratio_bound, sigma_expectation_check
