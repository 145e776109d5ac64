"""Three-voter Copeland instance built from a normal-form matching instance.

Every room, single, couple, couple copy and padding dummy becomes a *team*
with three team lists (one per voter).  The teams are laid over a flat
3-voter election on rho = 3^q teams, each team candidate list substituted
for the corresponding flat candidate, and 6*rho simple candidates are added
around the team region.  The distinguished candidate a1 is shifted one seat
to the left in the first voter's ranking, which makes it the unique winner
iff the relevant nominees can form a flat election, which in turn encodes a
complete matching.

In every reduced election the score of a1 is exactly (9*rho + 1) / 2.
"""

from __future__ import annotations

from typing import Sequence

from ..elections import NominationInstance
from ..errors import GeneratorError
from ..flat import generate_flat
from .generators import _instance
from .matching import MmcInstance, is_normal_form

TeamKey = tuple[str, str]  # ("room" | "single" | "couple" | "copy" | "dummy", id)


def canonical_teams(m: MmcInstance, dummy_count: int) -> list[TeamKey]:
    teams: list[TeamKey] = [("room", r) for r in sorted(m.rooms)]
    teams += [("single", s) for s in sorted(m.singles)]
    teams += [("couple", c) for c in sorted(m.couples)]
    teams += [("copy", c) for c in sorted(m.couples)]
    teams += [("dummy", f"dm{i}") for i in range(1, dummy_count + 1)]
    return teams


def dummy_team_count(m: MmcInstance) -> tuple[int, int]:
    """Smallest (count, q) with |R|+|S|+2|C|+count = 3^q, q >= 1."""
    base = len(m.rooms) + len(m.singles) + 2 * len(m.couples)
    q = 1
    while 3 ** q < base:
        q += 1
    return 3 ** q - base, q


def gen_mmc_copeland_3v(m: MmcInstance,
                        team_order: Sequence[TeamKey] | None = None) -> NominationInstance:
    """Three voters; yes under Copeland iff `m` has a complete matching.

    `m` must be in the normal form produced by mmc_normalize.  `team_order`
    optionally permutes the team sequence t_1..t_rho (any order is valid;
    the default groups rooms, singles, couples, copies, dummies).
    """
    if not is_normal_form(m):
        raise GeneratorError("input must be in normal form; run mmc_normalize first")
    dummies, q = dummy_team_count(m)
    base = len(m.rooms) + len(m.singles) + 2 * len(m.couples)
    if base and dummies > 2 * base:
        raise AssertionError("dummy padding exceeded its bound")
    teams = canonical_teams(m, dummies)
    if team_order is not None:
        if sorted(map(tuple, team_order)) != sorted(teams):
            raise GeneratorError("team_order must permute the canonical team set")
        teams = [tuple(t) for t in team_order]
    rho = len(teams)

    adj = {p: m.acceptable_rooms(p) for p in (*m.singles, *m.couples)}
    lists = {key: _team_lists(key, m, adj) for key in teams}

    width = len(str(3 * rho))
    a_ids = [f"a{i:0{width}d}" for i in range(1, 3 * rho + 1)]
    b_ids = [f"b{i:0{width}d}" for i in range(1, 3 * rho + 1)]

    flat_q = generate_flat(q, max_candidates=3 ** (q + 1)).voters
    flat_q1 = generate_flat(q + 1, max_candidates=3 ** (q + 1)).voters
    pos_q = {c: i for i, c in enumerate(flat_q[0])}
    pos_q1 = {c: i for i, c in enumerate(flat_q1[0])}
    pi = [pos_q[c] for c in flat_q[1]]
    pi_t = [pos_q[c] for c in flat_q[2]]
    phi = [pos_q1[c] for c in flat_q1[1]]
    phi_t = [pos_q1[c] for c in flat_q1[2]]

    voter_v = [x for key in teams for x in lists[key][0]]
    voter_v += b_ids[:-1] + [a_ids[0]] + [b_ids[-1]] + a_ids[1:]
    voter_vp = [a_ids[j] for j in phi]
    voter_vp += [x for k in range(rho) for x in lists[teams[pi[k]]][1]]
    voter_vp += [b_ids[j] for j in phi]
    voter_vpp = [b_ids[j] for j in phi_t] + [a_ids[j] for j in phi_t]
    voter_vpp += [x for k in range(rho) for x in lists[teams[pi_t[k]]][2]]

    parties = _parties(m, adj, dummies, a_ids, b_ids)
    inst = _instance([voter_v, voter_vp, voter_vpp], parties)
    if inst.t != 9 * rho or inst.sigma != 2:
        raise AssertionError("construction is out of shape")
    return inst


def _team_lists(key: TeamKey, m: MmcInstance, adj) -> tuple[list[str], list[str], list[str]]:
    kind, name = key
    if kind == "dummy":
        a, b, c = f"{name}.a", f"{name}.b", f"{name}.c"
        return [a, b, c], [c, a, b], [b, c, a]
    if kind == "room":
        return _room_lists(name, m)
    x = name if kind == "single" or kind == "couple" else f"^{name}"
    rooms = adj[name]
    xp = f"{x}'"
    negs = [f"!{x}@{r}" for r in rooms]
    if len(rooms) == 3:
        return ([x, xp, negs[0], negs[1], negs[2]],
                [negs[2], xp, negs[1], x, negs[0]],
                [negs[0], negs[1], negs[2], x, xp])
    return ([x, xp, negs[0], negs[1]],
            [negs[0], negs[1], x, xp],
            [xp, negs[0], negs[1], x])


def _room_lists(r: str, m: MmcInstance) -> tuple[list[str], list[str], list[str]]:
    persons = m.adjacent_persons(r)
    singles = [p for p in persons if p in m.singles]
    couples = [p for p in persons if p in m.couples]
    rp = f"{r}'"
    if singles and couples:  # normal form: exactly two singles, one couple
        s1, s2 = singles
        (c,) = couples
        return ([f"{s1}@{r}", r, f"{s2}@{r}", f"{c}@{r}", rp, f"^{c}@{r}"],
                [f"{s2}@{r}", f"{s1}@{r}", f"^{c}@{r}", f"{c}@{r}", r, rp],
                [r, rp, f"{s2}@{r}", f"{s1}@{r}", f"^{c}@{r}", f"{c}@{r}"])
    if singles:
        s = [f"{x}@{r}" for x in singles]
        tail = [s[2]] if len(s) == 3 else []
        return ([s[0], r, s[1], rp] + tail,
                tail + [s[1], s[0], r, rp],
                [r, rp] + tail + [s[1], s[0]])
    c = [f"{x}@{r}" for x in couples]
    h = [f"^{x}@{r}" for x in couples]
    third = len(c) == 3
    return (c[:3] + [r, rp] + h[:3],
            [h[0], c[0], h[1], c[1]] + ([h[2], c[2]] if third else []) + [r, rp],
            [r, rp] + ([h[2], c[2]] if third else []) + [h[1], c[1], h[0], c[0]])


def _parties(m: MmcInstance, adj, dummies: int, a_ids, b_ids) -> list[list[str]]:
    parties: list[list[str]] = [[a_ids[0]]]
    for i in range(1, dummies + 1):
        parties += [[f"dm{i}.a"], [f"dm{i}.b"], [f"dm{i}.c"]]
    persons = [*sorted(m.singles), *sorted(m.couples)]
    bases = []  # (candidate base id, underlying person)
    for p in persons:
        bases.append((p, p))
        if p in m.couples:
            bases.append((f"^{p}", p))
    for x, person in bases:
        if len(adj[person]) == 2:
            parties += [[x], [f"{x}'"]]
    parties += [[a] for a in a_ids[1:]]
    parties += [[b] for b in b_ids]
    for r in sorted(m.rooms):
        parties.append([r, f"{r}'"])
        for p in m.adjacent_persons(r):
            parties.append([f"{p}@{r}", f"!{p}@{r}"])
            if p in m.couples:
                parties.append([f"^{p}@{r}", f"!^{p}@{r}"])
    for x, person in bases:
        if len(adj[person]) == 3:
            parties.append([x, f"{x}'"])
    return parties
