"""Exact decision procedures for the Possible President problem.

Given a nomination instance, decide whether the distinguished party can
nominate a candidate that becomes the unique winner of the reduced election
for some nominations of the other parties.  Solvers:

* solve_bruteforce      -- exhaustive over all nominations (any rule);
                           a lexicographic DFS with sound score-interval
                           pruning, so structured instances far beyond the
                           raw sigma^t product remain decidable.
* solve_llull_two_voters / solve_maximin_two_voters
                        -- quadratic algorithms for two voters, where the
                           defeat relation is transitive: a nominee wins
                           uniquely iff it defeats every other nominee.
* solve_maximin_three_voters
                        -- same criterion via transitivity of unanimous
                           defeat for three voters.
* solve_maximin_fpt     -- branching over the distinguished nominee, its
                           Maximin score and a "beating party" per party,
                           reducing each branch to partitioned subdigraph
                           isomorphism (fixed-parameter in the party count).
* dispatch              -- routes to the cheapest applicable solver.

Every "yes" comes with a witness nomination that verify_witness accepts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .elections import (
    ALPHA_LLULL,
    Copeland,
    Maximin,
    NominationInstance,
    Rule,
    compute_pairwise,
    reduce,
    unique_winner,
)
from .errors import BudgetExceededError
from .psi import Digraph, PsiInstance, solve_psi

DEFAULT_MAX_COMBINATIONS = 2 ** 24
DEFAULT_MAX_FPT_PARTIES = 8


@dataclass(frozen=True)
class Witness:
    """A complete nomination, one candidate per party (by party index)."""

    nominees: tuple[str, ...]

    def as_dict(self) -> dict[int, str]:
        return dict(enumerate(self.nominees))


@dataclass(frozen=True)
class SolveResult:
    decision: bool
    witness: Witness | None
    algorithm: str


def verify_witness(inst: NominationInstance, rule: Rule, candidate: str,
                   witness: Witness | Mapping[int, str]) -> bool:
    """True iff `candidate` is the distinguished nominee of `witness` and is
    the unique winner of the reduced election.  Malformed witnesses raise."""
    nomination = witness.as_dict() if isinstance(witness, Witness) else dict(witness)
    if candidate not in inst.parties[inst.distinguished]:
        return False
    if nomination.get(inst.distinguished) != candidate:
        return False
    reduced = reduce(inst, nomination)  # raises on malformed nominations
    return unique_winner(reduced, rule) == candidate


def _checked(inst: NominationInstance, rule: Rule, nomination: dict[int, str],
             algorithm: str) -> SolveResult:
    witness = Witness(tuple(nomination[i] for i in range(inst.t)))
    p = nomination[inst.distinguished]
    if not verify_witness(inst, rule, p, witness):
        raise AssertionError(f"{algorithm} produced a witness that fails verification")
    return SolveResult(True, witness, algorithm)


def nomination_count(inst: NominationInstance) -> int:
    total = 1
    for p in inst.parties:
        total *= len(p)
    return total


# --- brute force ------------------------------------------------------------


class _Search:
    """Lexicographic DFS over complete nominations with interval pruning.

    For every candidate we maintain its exact score contribution from the
    parties assigned so far plus precomputed best/worst-case contributions
    of the unassigned parties.  A subtree is pruned only when some already
    nominated candidate is guaranteed to reach at least the best possible
    score of the distinguished nominee, i.e. only when no completion of the
    prefix can make the distinguished nominee the unique winner.  Hence the
    first leaf reached is exactly the lexicographically smallest witness.
    """

    def __init__(self, inst: NominationInstance, rule: Rule):
        self.inst = inst
        self.rule = rule
        self.maximin = isinstance(rule, Maximin)
        e = inst.election
        self.cands = sorted(e.candidates)
        index = {c: i for i, c in enumerate(self.cands)}
        self.m = len(self.cands)
        self.t = inst.t
        self.star = inst.distinguished
        self.parties = [sorted(index[c] for c in p) for p in inst.parties]
        self.party_of = [0] * self.m
        for j, members in enumerate(self.parties):
            for x in members:
                self.party_of[x] = j

        pm = compute_pairwise(e)
        n = e.n
        if self.maximin:
            value = [[0] * self.m for _ in range(self.m)]
            for a in range(self.m):
                for b in range(self.m):
                    if a != b:
                        value[a][b] = pm.count(self.cands[a], self.cands[b])
            self.infinity = n + 1
        else:
            num, den = rule.alpha.num, rule.alpha.den
            value = [[0] * self.m for _ in range(self.m)]
            for a in range(self.m):
                for b in range(self.m):
                    if a == b:
                        continue
                    ca, cb = self.cands[a], self.cands[b]
                    if pm.defeats(ca, cb):
                        value[a][b] = den
                    elif pm.tied(ca, cb):
                        value[a][b] = num
        self.value = value

        # Best/worst contribution of each party to each candidate, and the
        # corresponding suffix aggregates over parties i..t-1 (a sum for
        # Copeland, a minimum for Maximin).
        lo = [[0] * self.t for _ in range(self.m)]
        hi = [[0] * self.t for _ in range(self.m)]
        for x in range(self.m):
            for j in range(self.t):
                if j == self.party_of[x]:
                    continue
                vals = [value[x][y] for y in self.parties[j]]
                lo[x][j], hi[x][j] = min(vals), max(vals)
        self.suf_lo = [[0] * (self.t + 1) for _ in range(self.m)]
        self.suf_hi = [[0] * (self.t + 1) for _ in range(self.m)]
        for x in range(self.m):
            slo, shi = self.suf_lo[x], self.suf_hi[x]
            if self.maximin:
                slo[self.t] = shi[self.t] = self.infinity
            for j in range(self.t - 1, -1, -1):
                if j == self.party_of[x]:
                    slo[j], shi[j] = slo[j + 1], shi[j + 1]
                elif self.maximin:
                    slo[j] = min(slo[j + 1], lo[x][j])
                    shi[j] = min(shi[j + 1], hi[x][j])
                else:
                    slo[j] = slo[j + 1] + lo[x][j]
                    shi[j] = shi[j + 1] + hi[x][j]

        self.score = [self.infinity if self.maximin else 0] * self.m
        self.chosen: list[int] = []

    def run(self, pinned_first: int | None = None) -> list[str] | None:
        found = self._dfs(0, pinned_first)
        if found is None:
            return None
        return [self.cands[x] for x in found]

    def _dfs(self, i: int, pinned_first: int | None = None) -> list[int] | None:
        if i == self.t:
            return list(self.chosen)
        options = self.parties[i]
        if i == 0 and pinned_first is not None:
            options = [pinned_first]
        for c in options:
            trail = self._assign(i, c)
            if not self._pruned(i + 1):
                result = self._dfs(i + 1)
                if result is not None:
                    return result
            self._unassign(i, trail)
        return None

    def _assign(self, i: int, c: int):
        score, party_of = self.score, self.party_of
        self.chosen.append(c)
        if self.maximin:
            trail = []
            for x in range(self.m):
                if party_of[x] == i:
                    continue
                v = self.value[x][c]
                if v < score[x]:
                    trail.append((x, score[x]))
                    score[x] = v
            return trail
        for x in range(self.m):
            if party_of[x] != i:
                score[x] += self.value[x][c]
        return c

    def _unassign(self, i: int, trail) -> None:
        self.chosen.pop()
        score = self.score
        if self.maximin:
            for x, old in trail:
                score[x] = old
            return
        c = trail
        for x in range(self.m):
            if self.party_of[x] != i:
                score[x] -= self.value[x][c]

    def _pruned(self, nxt: int) -> bool:
        score, suf_lo, suf_hi = self.score, self.suf_lo, self.suf_hi
        if self.maximin:
            if nxt > self.star:
                p = self.chosen[self.star]
                best_p = min(score[p], suf_hi[p][nxt])
            else:
                best_p = max(min(score[c], suf_hi[c][nxt])
                             for c in self.parties[self.star])
            for j, x in enumerate(self.chosen):
                if j != self.star and min(score[x], suf_lo[x][nxt]) >= best_p:
                    return True
            return False
        if nxt > self.star:
            p = self.chosen[self.star]
            best_p = score[p] + suf_hi[p][nxt]
        else:
            best_p = max(score[c] + suf_hi[c][nxt] for c in self.parties[self.star])
        for j, x in enumerate(self.chosen):
            if j != self.star and score[x] + suf_lo[x][nxt] >= best_p:
                return True
        return False


def solve_bruteforce(inst: NominationInstance, rule: Rule, *,
                     max_combinations: int = DEFAULT_MAX_COMBINATIONS,
                     force: bool = False, threads: int = 1) -> SolveResult:
    """Exhaustive decision; the witness is the lexicographically smallest
    yes-nomination (by party order, then candidate id)."""
    total = nomination_count(inst)
    if total > max_combinations and not force:
        raise BudgetExceededError(
            f"{total} nominations exceed the budget of {max_combinations}; "
            "pass force=True to search anyway")
    if threads > 1 and len(inst.parties[0]) > 1:
        first = sorted(inst.parties[0])
        cands = sorted(inst.election.candidates)
        index = {c: i for i, c in enumerate(cands)}

        def branch(c: str):
            return _Search(inst, rule).run(pinned_first=index[c])

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for outcome in pool.map(branch, first):
                if outcome is not None:
                    return _checked(inst, rule, dict(enumerate(outcome)), "bruteforce")
        return SolveResult(False, None, "bruteforce")
    outcome = _Search(inst, rule).run()
    if outcome is None:
        return SolveResult(False, None, "bruteforce")
    return _checked(inst, rule, dict(enumerate(outcome)), "bruteforce")


# --- few-voter polynomial algorithms ----------------------------------------


def _solve_by_defeat_threshold(inst: NominationInstance, need: int,
                               algorithm: str) -> SolveResult:
    """Yes iff some distinguished candidate p has, in every other party, a
    candidate c with N(p, c) >= need; nominate the smallest such c."""
    pm = compute_pairwise(inst.election)
    star = inst.distinguished
    for p in sorted(inst.parties[star]):
        nomination = {star: p}
        for j, party in enumerate(inst.parties):
            if j == star:
                continue
            beaten = [c for c in sorted(party) if pm.count(p, c) >= need]
            if not beaten:
                break
            nomination[j] = beaten[0]
        else:
            return _checked(inst, _rule_for(algorithm), nomination, algorithm)
    return SolveResult(False, None, algorithm)


def _rule_for(algorithm: str) -> Rule:
    return Copeland(ALPHA_LLULL) if algorithm == "llull-2v" else Maximin()


def solve_llull_two_voters(inst: NominationInstance) -> SolveResult:
    """Two voters, Llull: p can win uniquely iff every other party contains
    a candidate ranked below p by both voters."""
    if inst.election.n != 2:
        raise ValueError("this solver requires exactly two voters")
    return _solve_by_defeat_threshold(inst, need=2, algorithm="llull-2v")


def solve_maximin_two_voters(inst: NominationInstance) -> SolveResult:
    """Two voters, Maximin: the criterion coincides with the Llull one."""
    if inst.election.n != 2:
        raise ValueError("this solver requires exactly two voters")
    return _solve_by_defeat_threshold(inst, need=2, algorithm="maximin-2v")


def solve_maximin_three_voters(inst: NominationInstance) -> SolveResult:
    """Three voters, Maximin: p can win uniquely iff every other party has a
    candidate preferred to by a majority (two of the three voters)."""
    if inst.election.n != 3:
        raise ValueError("this solver requires exactly three voters")
    return _solve_by_defeat_threshold(inst, need=2, algorithm="maximin-3v")


# --- FPT algorithm for Maximin ----------------------------------------------


def solve_maximin_fpt(inst: NominationInstance, *,
                      max_parties: int = DEFAULT_MAX_FPT_PARTIES) -> SolveResult:
    """Branch over the distinguished nominee p, its reduced-election Maximin
    score s*, and a map assigning every other party a party that beats it;
    each branch reduces to a subdigraph-isomorphism check whose pattern has
    indegree at most one.

    Branches are explored in a fixed order (p ascending, s* descending,
    the party map as a mixed-radix counter in party-index order), skipping
    only branches that provably fail, so the witness is deterministic.
    """
    algorithm = "maximin-fpt"
    t = inst.t
    if t > max_parties:
        raise BudgetExceededError(
            f"{t} parties exceed the FPT budget of {max_parties}")
    star = inst.distinguished
    if t == 1:
        return _checked(inst, Maximin(), {star: min(inst.parties[star])}, algorithm)
    e = inst.election
    pm = compute_pairwise(e)
    others = [i for i in range(t) if i != star]

    for p in sorted(inst.parties[star]):
        for s_star in range(e.n, 0, -1):
            # Step 3: candidates c with N(p, c) < s* cannot be co-nominated.
            alive = {i: [c for c in sorted(inst.parties[i])
                         if pm.count(p, c) >= s_star] for i in others}
            if any(not alive[i] for i in others):
                continue
            # Step 4 survivors for parties whose beating party is P*.
            beaten_by_p = {i: [c for c in alive[i] if pm.count(c, p) < s_star]
                           for i in others}
            feasible = {}
            for i in others:
                for q in others:
                    if q != i:
                        feasible[(q, i)] = any(
                            pm.count(c, cp) < s_star
                            for c in alive[i] for cp in alive[q])
            choices = []
            for i in others:
                opts = [q for q in range(t)
                        if q != i and (
                            (q == star and beaten_by_p[i]) or
                            (q != star and feasible.get((q, i), False)))]
                if not opts:
                    choices = None
                    break
                choices.append(opts)
            if choices is None:
                continue
            for combo in product(*choices):
                delta = dict(zip(others, combo))
                survivors = {i: (beaten_by_p[i] if delta[i] == star else alive[i])
                             for i in others}
                if any(not survivors[i] for i in others):  # Step 5
                    continue
                result = _branch_psi(inst, pm, p, s_star, delta, survivors, others)
                if result is not None:
                    return _checked(inst, Maximin(), result, algorithm)
    return SolveResult(False, None, algorithm)


def _branch_psi(inst, pm, p, s_star, delta, survivors, others):
    pattern = Digraph(
        frozenset(others),
        frozenset((delta[i], i) for i in others if delta[i] != inst.distinguished))
    host_vertices = [c for i in others for c in survivors[i]]
    label = {c: i for i in others for c in survivors[i]}
    arcs = set()
    for c in host_vertices:
        for cp in host_vertices:
            if c != cp and pm.count(c, cp) < s_star:
                arcs.add((cp, c))
    host = Digraph(frozenset(host_vertices), frozenset(arcs))
    yes, embedding = solve_psi(PsiInstance(pattern, host, label))
    if not yes:
        return None
    nomination = {i: embedding[i] for i in others}
    nomination[inst.distinguished] = p
    return nomination


# --- routing -----------------------------------------------------------------


def dispatch(inst: NominationInstance, rule: Rule, *,
             max_combinations: int = DEFAULT_MAX_COMBINATIONS,
             max_parties: int = DEFAULT_MAX_FPT_PARTIES,
             threads: int = 1) -> SolveResult:
    """Route to the cheapest applicable exact solver."""
    n = inst.election.n
    if isinstance(rule, Maximin):
        if n == 2:
            return solve_maximin_two_voters(inst)
        if n == 3:
            return solve_maximin_three_voters(inst)
        if inst.t <= max_parties:
            return solve_maximin_fpt(inst, max_parties=max_parties)
    elif n == 2 and rule.alpha.num == rule.alpha.den:
        return solve_llull_two_voters(inst)
    if nomination_count(inst) > max_combinations:
        raise BudgetExceededError(
            "no applicable exact solver within the configured budget")
    return solve_bruteforce(inst, rule, max_combinations=max_combinations,
                            threads=threads)
