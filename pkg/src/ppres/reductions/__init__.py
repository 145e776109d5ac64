"""Hardness-reduction instance generators and source-problem oracles."""

from .generators import (
    gen_3col_copeland_2v,
    gen_3col_llull_4v,
    gen_3sat_maximin_4v,
    gen_3sat_maximin_5v,
    gen_mcq_copeland,
)
from .graphs import (
    ColoredGraph,
    colored_graph,
    complete_graph,
    format_graph,
    parse_graph,
    solve_3coloring,
    solve_mcq,
)
from .matching import (
    MmcInstance,
    is_normal_form,
    mmc_from_json,
    mmc_instance,
    mmc_normalize,
    mmc_to_json,
    no_instance_g0,
    solve_mmc,
)
from .matching_gen import gen_mmc_copeland_3v
from .sat import CnfFormula, format_dimacs, parse_dimacs, solve_3sat

__all__ = [
    "CnfFormula",
    "ColoredGraph",
    "MmcInstance",
    "colored_graph",
    "complete_graph",
    "format_dimacs",
    "format_graph",
    "gen_3col_copeland_2v",
    "gen_3col_llull_4v",
    "gen_3sat_maximin_4v",
    "gen_3sat_maximin_5v",
    "gen_mcq_copeland",
    "gen_mmc_copeland_3v",
    "is_normal_form",
    "mmc_from_json",
    "mmc_instance",
    "mmc_normalize",
    "mmc_to_json",
    "no_instance_g0",
    "parse_dimacs",
    "parse_graph",
    "solve_3coloring",
    "solve_3sat",
    "solve_mcq",
    "solve_mmc",
]
