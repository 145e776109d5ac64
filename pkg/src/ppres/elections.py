"""Core election model: preference profiles, pairwise majorities, and the
Copeland^alpha / Maximin voting rules.

Candidates are plain string ids.  All values are immutable after
construction and every operation is a pure function, so elections can be
shared freely across workers.

Copeland^alpha scores are kept exact: a score is a (wins, ties) pair and two
scores are compared through the integer ``wins*den + ties*num`` where
``alpha = num/den``.  No floating point is involved anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Ranking = tuple[str, ...]


@dataclass(frozen=True)
class Alpha:
    """Exact tie value of the Copeland^alpha rule, a rational in [0, 1]."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den <= 0 or self.num < 0:
            raise ValueError(f"alpha must be a non-negative rational, got {self.num}/{self.den}")
        if self.num > self.den:
            raise ValueError(f"alpha must be at most 1, got {self.num}/{self.den}")
        g = gcd(self.num, self.den)
        if g != 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def parse(cls, text: str) -> "Alpha":
        """Parse an exact fraction string like ``1/2``, ``0`` or ``1``.

        Decimal notation is rejected on purpose: it would silently round.
        """
        text = text.strip()
        if "." in text:
            raise ValueError(f"alpha must be an exact fraction 'p/q', not a decimal: {text!r}")
        if "/" in text:
            p, _, q = text.partition("/")
            return cls(int(p), int(q))
        return cls(int(text), 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}" if self.den != 1 else str(self.num)


ALPHA_COPELAND = Alpha(0, 1)
ALPHA_LLULL = Alpha(1, 1)


@dataclass(frozen=True)
class Copeland:
    """The Copeland^alpha rule; alpha=1 is Llull, alpha=0 plain Copeland."""

    alpha: Alpha

    def __str__(self) -> str:
        return f"copeland:{self.alpha}"


@dataclass(frozen=True)
class Maximin:
    def __str__(self) -> str:
        return "maximin"


Rule = Copeland | Maximin


def parse_rule(text: str) -> Rule:
    """Parse ``maximin``, ``llull``, ``copeland`` (alpha=0) or ``copeland:p/q``."""
    text = text.strip().lower()
    if text == "maximin":
        return Maximin()
    if text == "llull":
        return Copeland(ALPHA_LLULL)
    if text == "copeland":
        return Copeland(ALPHA_COPELAND)
    if text.startswith("copeland:"):
        return Copeland(Alpha.parse(text[len("copeland:"):]))
    raise ValueError(f"unknown rule {text!r}")


@dataclass(frozen=True)
class Election:
    """A profile of strict rankings over a common candidate set."""

    candidates: frozenset[str]
    voters: tuple[Ranking, ...]

    def __post_init__(self) -> None:
        if not self.voters:
            raise ValueError("an election needs at least one voter")
        if not self.candidates:
            raise ValueError("an election needs at least one candidate")
        for c in self.candidates:
            if not isinstance(c, str) or not c:
                raise ValueError(f"candidate ids must be non-empty strings, got {c!r}")
        for i, ranking in enumerate(self.voters):
            if len(ranking) != len(self.candidates) or set(ranking) != self.candidates:
                raise ValueError(f"voter {i} is not a permutation of the candidate set")

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.candidates)

    def restrict(self, subset: Iterable[str]) -> "Election":
        """The election over `subset` with every ranking filtered to it."""
        keep = frozenset(subset)
        extra = keep - self.candidates
        if extra:
            raise ValueError(f"not candidates of this election: {sorted(extra)}")
        return Election(keep, tuple(tuple(c for c in r if c in keep) for r in self.voters))


def election(voters: Sequence[Sequence[str]]) -> Election:
    """Convenience constructor; the candidate set is read off the first ranking."""
    if not voters:
        raise ValueError("an election needs at least one voter")
    return Election(frozenset(voters[0]), tuple(tuple(r) for r in voters))


class PairwiseMatrix:
    """Majority counts N(a, b) = number of voters preferring a to b.

    Satisfies N(a, b) + N(b, a) = n for all a != b.
    """

    def __init__(self, n: int, counts: Mapping[tuple[str, str], int]):
        self.n = n
        self._counts = dict(counts)

    def count(self, a: str, b: str) -> int:
        if a == b:
            raise ValueError("pairwise count is undefined for a candidate against itself")
        return self._counts[(a, b)]

    def defeats(self, a: str, b: str) -> bool:
        return self.count(a, b) > self.count(b, a)

    def tied(self, a: str, b: str) -> bool:
        return self.count(a, b) == self.count(b, a)

    def strongly_defeats(self, a: str, b: str) -> bool:
        """All voters prefer a to b."""
        return self.count(a, b) == self.n


def compute_pairwise(e: Election) -> PairwiseMatrix:
    counts: dict[tuple[str, str], int] = {}
    cands = sorted(e.candidates)
    for a in cands:
        for b in cands:
            if a != b:
                counts[(a, b)] = 0
    for ranking in e.voters:
        pos = {c: i for i, c in enumerate(ranking)}
        for i, a in enumerate(cands):
            for b in cands[i + 1:]:
                if pos[a] < pos[b]:
                    counts[(a, b)] += 1
                else:
                    counts[(b, a)] += 1
    return PairwiseMatrix(e.n, counts)


def defeats(pm: PairwiseMatrix, a: str, b: str) -> bool:
    return pm.defeats(a, b)


def tied(pm: PairwiseMatrix, a: str, b: str) -> bool:
    return pm.tied(a, b)


@dataclass(frozen=True)
class CopelandScore:
    """Number of candidates defeated and tied; exact under any alpha."""

    wins: int
    ties: int

    def scaled(self, alpha: Alpha) -> int:
        """Integer wins*den + ties*num; same order as wins + alpha*ties."""
        return self.wins * alpha.den + self.ties * alpha.num

    def value(self, alpha: Alpha) -> Fraction:
        return self.wins + alpha.as_fraction() * self.ties


def copeland_scores(e: Election, alpha: Alpha | None = None,
                    pm: PairwiseMatrix | None = None) -> dict[str, CopelandScore]:
    """Per-candidate (wins, ties) pairs.  `alpha` only matters when comparing."""
    del alpha  # scores are alpha-independent; kept for call-site symmetry
    if pm is None:
        pm = compute_pairwise(e)
    scores = {}
    for a in e.candidates:
        wins = ties = 0
        for b in e.candidates:
            if a == b:
                continue
            if pm.defeats(a, b):
                wins += 1
            elif pm.tied(a, b):
                ties += 1
        scores[a] = CopelandScore(wins, ties)
    return scores


def maximin_scores(e: Election, pm: PairwiseMatrix | None = None) -> dict[str, int]:
    if e.m < 2:
        raise ValueError("maximin is undefined for a single-candidate election")
    if pm is None:
        pm = compute_pairwise(e)
    return {a: min(pm.count(a, b) for b in e.candidates if b != a) for a in e.candidates}


def winners(e: Election, rule: Rule) -> set[str]:
    """All candidates with the maximum score under `rule`."""
    if e.m == 1:
        return set(e.candidates)
    if isinstance(rule, Maximin):
        scores = maximin_scores(e)
        best = max(scores.values())
        return {c for c, s in scores.items() if s == best}
    cscores = copeland_scores(e)
    scaled = {c: s.scaled(rule.alpha) for c, s in cscores.items()}
    best = max(scaled.values())
    return {c for c, s in scaled.items() if s == best}


def unique_winner(e: Election, rule: Rule) -> str | None:
    w = winners(e, rule)
    return next(iter(w)) if len(w) == 1 else None


def condorcet_winner(e: Election, pm: PairwiseMatrix | None = None) -> str | None:
    """The candidate defeating all others, if any."""
    if e.m == 1:
        return next(iter(e.candidates))
    if pm is None:
        pm = compute_pairwise(e)
    for a in e.candidates:
        if all(pm.defeats(a, b) for b in e.candidates if b != a):
            return a
    return None


@dataclass(frozen=True)
class NominationInstance:
    """An election whose candidates are partitioned into parties, one of
    which (the distinguished party) wants to nominate the unique winner."""

    election: Election
    parties: tuple[frozenset[str], ...]
    distinguished: int

    def __post_init__(self) -> None:
        if not self.parties:
            raise ValueError("at least one party is required")
        if not 0 <= self.distinguished < len(self.parties):
            raise ValueError("distinguished party index out of range")
        seen: set[str] = set()
        for i, p in enumerate(self.parties):
            if not p:
                raise ValueError(f"party {i} is empty")
            if p & seen:
                raise ValueError(f"party {i} overlaps another party")
            seen |= p
        if seen != self.election.candidates:
            raise ValueError("parties must partition the candidate set")

    @property
    def t(self) -> int:
        return len(self.parties)

    @property
    def sigma(self) -> int:
        return max(len(p) for p in self.parties)

    def party_of(self, c: str) -> int:
        for i, p in enumerate(self.parties):
            if c in p:
                return i
        raise KeyError(c)


def reduce(inst: NominationInstance, nomination: Mapping[int, str]) -> Election:
    """The reduced election after every party nominates per `nomination`.

    Pairwise counts among the surviving candidates are preserved.
    """
    if set(nomination.keys()) != set(range(inst.t)):
        raise ValueError("nomination must name exactly one candidate per party")
    for i, c in nomination.items():
        if c not in inst.parties[i]:
            raise ValueError(f"candidate {c!r} is not a member of party {i}")
    return inst.election.restrict(nomination.values())


# --- serialization ---------------------------------------------------------


def election_to_dict(e: Election) -> dict:
    return {
        "candidates": sorted(e.candidates),
        "voters": [list(r) for r in e.voters],
    }


def instance_to_dict(inst: NominationInstance) -> dict:
    doc = election_to_dict(inst.election)
    doc["parties"] = [sorted(p) for p in inst.parties]
    doc["distinguished"] = inst.distinguished
    return doc


def election_from_dict(doc: Mapping) -> Election:
    try:
        cands = doc["candidates"]
        voters = doc["voters"]
    except KeyError as exc:
        raise ValueError(f"election document is missing field {exc}") from None
    return Election(frozenset(cands), tuple(tuple(r) for r in voters))


def instance_from_dict(doc: Mapping) -> NominationInstance:
    e = election_from_dict(doc)
    if "parties" not in doc:
        raise ValueError("nomination instance document is missing field 'parties'")
    parties = tuple(frozenset(p) for p in doc["parties"])
    distinguished = doc.get("distinguished", 0)
    return NominationInstance(e, parties, distinguished)


def to_json(obj: Election | NominationInstance, metadata: Mapping | None = None) -> str:
    """Deterministic pretty-printed JSON for an election or instance."""
    doc = election_to_dict(obj) if isinstance(obj, Election) else instance_to_dict(obj)
    if metadata is not None:
        doc["metadata"] = dict(metadata)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> Election | NominationInstance:
    """Parse the JSON format; returns an instance when parties are present."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")
    if "parties" in doc:
        return instance_from_dict(doc)
    return election_from_dict(doc)
