"""Recursive 3-voter flat elections on 3^q candidates.

The level-1 election is the 3-cycle profile

    w  : a, b, c
    w' : c, a, b
    w'' : b, c, a

and each further level replaces every candidate by three copies, rotating
the copy blocks between the voters (w: 1,2,3 / w': 3,1,2 / w'': 2,3,1).
Every candidate of the level-q election defeats exactly (3^q - 1)/2 others,
so all Copeland scores coincide ("flat"), and no candidate is ranked above
another by all three voters.

Candidate ids render as ``base.h1.h2...h_{q-1}`` with base in {a, b, c} and
copy indices in {1, 2, 3}; level-1 ids are bare ``a``, ``b``, ``c``.
"""

from __future__ import annotations

from .elections import Election, compute_pairwise, copeland_scores
from .errors import BudgetExceededError

BASES = ("a", "b", "c")

DEFAULT_MAX_CANDIDATES = 3 ** 10


def candidate_id(base: str, copies: tuple[int, ...]) -> str:
    if base not in BASES:
        raise ValueError(f"base must be one of {BASES}, got {base!r}")
    if any(h not in (1, 2, 3) for h in copies):
        raise ValueError("copy indices must be in {1, 2, 3}")
    return ".".join([base, *map(str, copies)])


def parse_candidate_id(cand: str) -> tuple[str, tuple[int, ...]]:
    base, *rest = cand.split(".")
    copies = tuple(int(h) for h in rest)
    candidate_id(base, copies)  # validates
    return base, copies


def generate_flat(q: int, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> Election:
    """The level-q flat election with voters in the fixed order (w, w', w'')."""
    if q < 1:
        raise ValueError("q must be at least 1")
    if 3 ** q > max_candidates:
        raise BudgetExceededError(f"3^{q} candidates exceed the guard of {max_candidates}")
    lists = _voter_lists(q)
    return Election(frozenset(lists[0]), tuple(tuple(lst) for lst in lists))


def _voter_lists(q: int) -> list[list[str]]:
    w = ["a", "b", "c"]
    wp = ["c", "a", "b"]
    wpp = ["b", "c", "a"]
    rotations = ((1, 2, 3), (3, 1, 2), (2, 3, 1))
    for _ in range(q - 1):
        new = []
        for lst, rot in zip((w, wp, wpp), rotations):
            new.append([f"{c}.{h}" for h in rot for c in lst])
        w, wp, wpp = new
    return [w, wp, wpp]


def is_flat(e: Election) -> bool:
    """True iff all candidates have the same (wins, ties) pair."""
    scores = copeland_scores(e)
    return len(set(scores.values())) == 1


def level_group(cand: str, q_prime: int, q: int) -> set[str]:
    """All candidates of the level-q election agreeing with `cand` on the
    copy indices h_i for q' <= i <= q-1.

    The group has 3^q' members and the restriction of the level-q election
    to it is a copy of the level-q' election.
    """
    base, copies = parse_candidate_id(cand)
    if len(copies) != q - 1:
        raise ValueError(f"{cand!r} is not a candidate of the level-{q} election")
    if not 1 <= q_prime <= q:
        raise ValueError(f"level must be in [1, {q}], got {q_prime}")
    fixed = copies[q_prime - 1:]
    group = set()
    free = q_prime - 1

    def rec(prefix: tuple[int, ...]) -> None:
        if len(prefix) == free:
            for b in BASES:
                group.add(candidate_id(b, prefix + fixed))
            return
        for h in (1, 2, 3):
            rec(prefix + (h,))

    rec(())
    return group


def top_level_index(cand: str, q: int) -> int:
    """The copy index appended at the last construction step (h_{q-1});
    level-1 candidates have none and raise."""
    _, copies = parse_candidate_id(cand)
    if len(copies) != q - 1:
        raise ValueError(f"{cand!r} is not a candidate of the level-{q} election")
    if not copies:
        raise ValueError("level-1 candidates have no copy index")
    return copies[-1]
