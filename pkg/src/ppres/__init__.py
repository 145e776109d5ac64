"""ppres: exact solvers and instance generators for the Possible President
problem (can a party nominate someone who uniquely wins the reduced
election?) under Copeland^alpha and Maximin voting."""

from .elections import (
    ALPHA_COPELAND,
    ALPHA_LLULL,
    Alpha,
    Copeland,
    CopelandScore,
    Election,
    Maximin,
    NominationInstance,
    PairwiseMatrix,
    Rule,
    compute_pairwise,
    condorcet_winner,
    copeland_scores,
    election,
    from_json,
    maximin_scores,
    parse_rule,
    reduce,
    to_json,
    unique_winner,
    winners,
)
from .errors import BudgetExceededError, GeneratorError
from .flat import generate_flat, is_flat, level_group
from .solvers import (
    SolveResult,
    Witness,
    dispatch,
    solve_bruteforce,
    solve_llull_two_voters,
    solve_maximin_fpt,
    solve_maximin_three_voters,
    solve_maximin_two_voters,
    verify_witness,
)

__version__ = "0.1.0"
