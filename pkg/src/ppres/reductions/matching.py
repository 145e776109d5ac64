"""Matching with couples: singles and couples must be assigned to acceptable
rooms of capacity two (a couple fills a room; up to two singles share one).

Besides the instance type, its JSON form and a backtracking oracle, this
module hosts the normal-form rewriter: any instance is transformed into an
equivalent one in which |R| = |S|/2 + |C|, every vertex of the acceptability
graph has degree 2 or 3, and every room adjacent to both singles and couples
is adjacent to exactly two singles and one couple.  Trivial no-instances
(overfull, or with an unmatchable vertex) become the fixed no-instance G0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import BudgetExceededError


@dataclass(frozen=True)
class MmcInstance:
    singles: tuple[str, ...]
    couples: tuple[str, ...]
    rooms: tuple[str, ...]
    edges: frozenset[tuple[str, str]]  # (person, room)

    def __post_init__(self) -> None:
        s, c, r = set(self.singles), set(self.couples), set(self.rooms)
        if len(s) + len(c) + len(r) != len(self.singles) + len(self.couples) + len(self.rooms):
            raise ValueError("vertex names must be unique across singles, couples and rooms")
        persons = s | c
        for p, room in self.edges:
            if p not in persons or room not in r:
                raise ValueError(f"edge ({p!r}, {room!r}) must join a person to a room")

    def acceptable_rooms(self, person: str) -> list[str]:
        return sorted(room for p, room in self.edges if p == person)

    def adjacent_persons(self, room: str) -> list[str]:
        return sorted(p for p, r in self.edges if r == room)


def mmc_instance(singles, couples, rooms, edges) -> MmcInstance:
    return MmcInstance(tuple(sorted(singles)), tuple(sorted(couples)),
                       tuple(sorted(rooms)), frozenset(tuple(e) for e in edges))


def mmc_to_json(m: MmcInstance, metadata=None) -> str:
    doc = {
        "singles": list(m.singles),
        "couples": list(m.couples),
        "rooms": list(m.rooms),
        "edges": sorted([p, r] for p, r in m.edges),
    }
    if metadata is not None:
        doc["metadata"] = dict(metadata)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def mmc_from_json(text: str) -> MmcInstance:
    doc = json.loads(text)
    try:
        return mmc_instance(doc["singles"], doc["couples"], doc["rooms"], doc["edges"])
    except KeyError as exc:
        raise ValueError(f"matching instance document is missing field {exc}") from None


def solve_mmc(m: MmcInstance, max_nodes: int = 2 * 10 ** 6) -> dict[str, str] | None:
    """A complete matching person->room, or None.

    Backtracking with three ingredients that keep it shallow on the large,
    gadget-chained instances the normalizer emits:

    * interchangeable persons (same kind, same acceptable rooms) form a
      counted group assigned in non-decreasing room order;
    * per-room capacity bounds: a prefix whose rooms can absorb fewer units
      than the remaining demand is dead, so starving a room fails at once;
    * independent components of the residual person/room graph are solved
      separately, so a failure inside one gadget never thrashes another.
    """
    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    try:
        return _MmcSearch(m, max_nodes).run()
    finally:
        sys.setrecursionlimit(limit)


class _MmcSearch:
    def __init__(self, m: MmcInstance, max_nodes: int):
        self.room_names = list(m.rooms)
        ridx = {r: i for i, r in enumerate(self.room_names)}
        bykey: dict[tuple, list[str]] = {}
        for p in m.couples:
            bykey.setdefault((2, tuple(m.acceptable_rooms(p))), []).append(p)
        for p in m.singles:
            bykey.setdefault((1, tuple(m.acceptable_rooms(p))), []).append(p)
        self.groups = [(units, [ridx[r] for r in opts], sorted(members))
                       for (units, opts), members in sorted(bykey.items())]
        nrooms = len(self.room_names)
        self.load = [0] * nrooms
        self.n_singles = [0] * nrooms  # unassigned adjacent singles
        self.n_couples = [0] * nrooms  # unassigned adjacent couples
        for units, opts, members in self.groups:
            for r in opts:
                if units == 1:
                    self.n_singles[r] += len(members)
                else:
                    self.n_couples[r] += len(members)
        self.cap = [self._room_cap(r) for r in range(nrooms)]
        self.floor = [0] * len(self.groups)   # min room index for next member
        self.left = [len(members) for _, _, members in self.groups]
        self.picks: list[list[int]] = [[] for _ in self.groups]
        self.trail: list[tuple[int, int, int]] = []  # (group, room, old floor)
        self.max_nodes = max_nodes
        self.nodes = 0
        self.refuted: set = set()  # component states proved unsatisfiable
        # Static branch order from a depth-first walk of the person/room
        # graph: the search then finishes one gadget before entering the
        # next, so equal residual states recur and the refutation cache
        # collapses the search the way dynamic programming would.
        self.rank = self._dfs_ranks()

    def _dfs_ranks(self) -> list[int]:
        nrooms = len(self.room_names)
        room_groups: list[list[int]] = [[] for _ in range(nrooms)]
        for gi, (_, opts, _) in enumerate(self.groups):
            for r in opts:
                room_groups[r].append(gi)
        rank = [len(self.groups)] * len(self.groups)
        seen_rooms = [False] * nrooms
        seen_groups = [False] * len(self.groups)
        counter = 0
        for start in range(nrooms):
            if seen_rooms[start]:
                continue
            stack = [start]
            seen_rooms[start] = True
            while stack:
                r = stack.pop()
                for gi in room_groups[r]:
                    if not seen_groups[gi]:
                        seen_groups[gi] = True
                        rank[gi] = counter
                        counter += 1
                        for q in reversed(self.groups[gi][1]):
                            if not seen_rooms[q]:
                                seen_rooms[q] = True
                                stack.append(q)
        return rank

    def run(self) -> dict[str, str] | None:
        if not self._solve([gi for gi in range(len(self.groups)) if self.left[gi]]):
            return None
        assignment: dict[str, str] = {}
        for (units, opts, members), assigned in zip(self.groups, self.picks):
            for person, r in zip(members, assigned):
                assignment[person] = self.room_names[r]
        return assignment

    # bookkeeping ------------------------------------------------------

    def _room_cap(self, r: int) -> int:
        free = 2 - self.load[r]
        if free == 2 and self.n_couples[r]:
            return 2
        return min(free, self.n_singles[r])

    def _place(self, gi: int, r: int, sign: int) -> None:
        units, opts, _ = self.groups[gi]
        counter = self.n_singles if units == 1 else self.n_couples
        for q in opts:
            counter[q] -= sign
            self.cap[q] = self._room_cap(q)
        self.load[r] += sign * units
        self.cap[r] = self._room_cap(r)

    def _assign(self, gi: int, r: int) -> None:
        self.trail.append((gi, r, self.floor[gi]))
        self._place(gi, r, +1)
        self.floor[gi] = r
        self.left[gi] -= 1
        self.picks[gi].append(r)

    def _rewind(self, mark: int) -> None:
        while len(self.trail) > mark:
            gi, r, old_floor = self.trail.pop()
            self.picks[gi].pop()
            self.left[gi] += 1
            self.floor[gi] = old_floor
            self._place(gi, r, -1)

    def _feasible(self, gi: int) -> list[int]:
        units, opts, _ = self.groups[gi]
        lo = self.floor[gi]
        return [r for r in opts if r >= lo and self.load[r] + units <= 2]

    # search -----------------------------------------------------------

    def _components(self, active: list[int]) -> list[list[int]]:
        parent = {gi: gi for gi in active}

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        room_seen: dict[int, int] = {}
        for gi in active:
            units = self.groups[gi][0]
            for r in self.groups[gi][1]:
                if self.load[r] + units > 2:
                    continue
                if r in room_seen:
                    ra, rb = find(room_seen[r]), find(gi)
                    if ra != rb:
                        parent[rb] = ra
                else:
                    room_seen[r] = gi
        comps: dict[int, list[int]] = {}
        for gi in active:
            comps.setdefault(find(gi), []).append(gi)
        return list(comps.values())

    def _solve(self, active: list[int]) -> bool:
        active = [gi for gi in active if self.left[gi]]
        if not active:
            return True
        comps = self._components(active)
        mark = len(self.trail)
        for comp in comps:
            if not self._branch(comp):
                self._rewind(mark)
                return False
        return True

    def _branch(self, active: list[int]) -> bool:
        """Branch over couple placements only; once a component has no
        unplaced couples left, the singles form a bipartite b-matching
        problem that _singles_flow decides exactly."""
        active = [gi for gi in active if self.left[gi]]
        if not active:
            return True
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(f"matching search exceeded {self.max_nodes} nodes")
        mark = len(self.trail)
        while True:  # propagate forced couples, then branch
            remaining = 0
            rooms_here: set[int] = set()
            best, best_rooms = None, None
            for gi in active:
                units = self.groups[gi][0]
                remaining += units * self.left[gi]
                rooms_here.update(self.groups[gi][1])
                rs = self._feasible(gi)
                if not rs:
                    self._rewind(mark)
                    return False
                key = (len(rs) > 1, self.rank[gi])  # forced first, then locality
                if best is None or key < (len(best_rooms) > 1, self.rank[best]):
                    best, best_rooms = gi, rs
            if sum(self.cap[r] for r in rooms_here) < remaining:
                self._rewind(mark)
                return False
            if best is None:  # singles only: decide by matching
                if self._singles_flow(active, record=True):
                    return True
                self._rewind(mark)
                return False
            if not self._singles_flow(active) or not self._couples_flow(active):
                self._rewind(mark)
                return False
            if len(best_rooms) > 1:
                break
            self._assign(best, best_rooms[0])
            active = [gi for gi in active if self.left[gi]]
            if not active:
                return True
        state = (tuple((gi, self.left[gi], self.floor[gi]) for gi in active),
                 tuple(self.load[r] for r in sorted(rooms_here)))
        if state in self.refuted:
            self._rewind(mark)
            return False
        inner = len(self.trail)
        for r in best_rooms:
            self._assign(best, r)
            if self._solve(active):
                return True
            self._rewind(inner)
        self.refuted.add(state)
        self._rewind(mark)
        return False

    def _singles_flow(self, active: list[int], record: bool = False) -> bool:
        """Can the remaining singles be placed into the current free
        capacity?  Exact bipartite b-matching by augmenting paths; placing
        further couples only shrinks capacity, so a failure prunes.  With
        `record` the found placement is committed to the trail."""
        ok, occupants = self._flow(
            [gi for gi in active if self.groups[gi][0] == 1 and self.left[gi]],
            lambda r: 2 - self.load[r])
        if not ok or not record:
            return ok
        per_group: dict[int, list[int]] = {}
        for r, who in occupants.items():
            for gi in who:
                per_group.setdefault(gi, []).append(r)
        for gi, rs in per_group.items():
            for r in sorted(rs):
                self._assign(gi, r)
        return True

    def _couples_flow(self, active: list[int]) -> bool:
        """Can the remaining couples get pairwise-distinct empty rooms?
        Necessary since singles placements only shrink the empty-room set."""
        ok, _ = self._flow(
            [gi for gi in active if self.groups[gi][0] == 2 and self.left[gi]],
            lambda r: 1 if self.load[r] == 0 else 0)
        return ok

    def _flow(self, members: list[int], capacity):
        free: dict[int, int] = {}
        for gi in members:
            for r in self.groups[gi][1]:
                if r not in free:
                    free[r] = capacity(r)
        occupants: dict[int, list[int]] = {r: [] for r in free}

        def augment(gi: int, visited: set[int]) -> bool:
            for r in self.groups[gi][1]:
                if r in visited:
                    continue
                visited.add(r)
                if free[r] > 0:
                    free[r] -= 1
                    occupants[r].append(gi)
                    return True
                for idx, occupant in enumerate(occupants[r]):
                    if augment(occupant, visited):
                        occupants[r][idx] = gi
                        return True
            return False

        for gi in members:
            for _ in range(self.left[gi]):
                if not augment(gi, set()):
                    return False, occupants
        return True, occupants


def no_instance_g0() -> MmcInstance:
    """Five couples and five rooms with no complete matching: three couples
    share two rooms, two couples share the remaining three."""
    couples = [f"g0c{i}" for i in range(1, 6)]
    rooms = [f"g0r{i}" for i in range(1, 6)]
    edges = [(f"g0c{i}", f"g0r{j}") for i in (1, 2, 3) for j in (1, 2)]
    edges += [(f"g0c{i}", f"g0r{j}") for i in (4, 5) for j in (3, 4, 5)]
    return mmc_instance([], couples, rooms, edges)


def is_normal_form(m: MmcInstance) -> bool:
    adj = _adjacency(m)
    singles, couples = set(m.singles), set(m.couples)
    if 2 * len(m.rooms) != len(m.singles) + 2 * len(m.couples):
        return False
    for v in (*m.singles, *m.couples, *m.rooms):
        if len(adj[v]) not in (2, 3):
            return False
    for room in m.rooms:
        s_adj = adj[room] & singles
        c_adj = adj[room] & couples
        if s_adj and c_adj and not (len(s_adj) == 2 and len(c_adj) == 1):
            return False
    return True


def _adjacency(m: MmcInstance) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in (*m.singles, *m.couples, *m.rooms)}
    for p, r in m.edges:
        adj[p].add(r)
        adj[r].add(p)
    return adj


class _Rewriter:
    def __init__(self, m: MmcInstance):
        self.singles = set(m.singles)
        self.couples = set(m.couples)
        self.rooms = set(m.rooms)
        self.adj = _adjacency(m)
        self.counter = 0

    def fresh(self, prefix: str) -> str:
        while True:
            self.counter += 1
            name = f"{prefix}+{self.counter}"
            if name not in self.adj:
                return name

    def add(self, kind: set, prefix: str) -> str:
        name = self.fresh(prefix)
        kind.add(name)
        self.adj[name] = set()
        return name

    def link(self, a: str, b: str) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)

    def unlink(self, a: str, b: str) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def freeze(self) -> MmcInstance:
        edges = [(p, r) for p in sorted(self.singles | self.couples)
                 for r in sorted(self.adj[p])]
        return mmc_instance(self.singles, self.couples, self.rooms, edges)

    # -- the degree-reduction rules (applied lowest rule first, smallest pivot) --

    def rule_split_mixed(self) -> bool:
        """Room with >=2 couples and >=1 single: move the singles to a fresh
        room tied to the original through a fresh couple."""
        for r in sorted(self.rooms):
            cs = sorted(self.adj[r] & self.couples)
            ss = sorted(self.adj[r] & self.singles)
            if len(cs) >= 2 and len(ss) >= 1:
                r2 = self.add(self.rooms, "r")
                c2 = self.add(self.couples, "c")
                self.link(c2, r)
                self.link(c2, r2)
                for s in ss:
                    self.unlink(s, r)
                    self.link(s, r2)
                return True
        return False

    def rule_drop_half_room_edge(self) -> bool:
        """Room with exactly one single and one couple: the single can never
        be placed there, so the edge goes."""
        for r in sorted(self.rooms):
            cs = self.adj[r] & self.couples
            ss = self.adj[r] & self.singles
            if len(cs) == 1 and len(ss) == 1:
                self.unlink(next(iter(ss)), r)
                return True
        return False

    def rule_single_degree(self) -> bool:
        """Single with >= 4 rooms: keep the first, hand three rooms to fresh
        singles, and couple everything through two fresh rooms."""
        for s in sorted(self.singles):
            rs = sorted(self.adj[s] & self.rooms)
            if len(rs) >= 4:
                _, r2, r3, r4 = rs[:4]
                s2 = self.add(self.singles, "s")
                s3 = self.add(self.singles, "s")
                s4 = self.add(self.singles, "s")
                s_star = self.add(self.singles, "s")
                q1 = self.add(self.rooms, "r")
                q2 = self.add(self.rooms, "r")
                for r in (r2, r3, r4):
                    self.unlink(s, r)
                for a, b in ((s2, r2), (s3, r3), (s4, r4), (s, q1), (s2, q1),
                             (s3, q2), (s4, q2), (s_star, q1), (s_star, q2)):
                    self.link(a, b)
                return True
        return False

    def rule_couple_degree(self) -> bool:
        """Couple with >= 4 rooms: split into one couple per room, chained
        through fresh rooms."""
        for c in sorted(self.couples):
            rs = sorted(self.adj[c] & self.rooms)
            if len(rs) >= 4:
                for r in rs:
                    self.unlink(c, r)
                self.couples.discard(c)
                del self.adj[c]
                parts = [self.add(self.couples, "c") for _ in rs]
                chain = [self.add(self.rooms, "r") for _ in rs[:-1]]
                for part, r in zip(parts, rs):
                    self.link(part, r)
                for j, mid in enumerate(chain):
                    self.link(parts[j], mid)
                    self.link(parts[j + 1], mid)
                return True
        return False

    def rule_room_degree_couples(self) -> bool:
        """Room with >= 4 couples and no singles: the mirror image of
        rule_couple_degree."""
        for r in sorted(self.rooms):
            if self.adj[r] & self.singles:
                continue
            cs = sorted(self.adj[r] & self.couples)
            if len(cs) >= 4:
                for c in cs:
                    self.unlink(c, r)
                self.rooms.discard(r)
                del self.adj[r]
                parts = [self.add(self.rooms, "r") for _ in cs]
                chain = [self.add(self.couples, "c") for _ in cs[:-1]]
                for part, c in zip(parts, cs):
                    self.link(c, part)
                for j, mid in enumerate(chain):
                    self.link(parts[j], mid)
                    self.link(parts[j + 1], mid)
                return True
        return False

    def rule_room_degree_singles(self) -> bool:
        """Room of degree > 3 with >= 2 singles and at most one couple:
        detach two singles through a fixed 19-vertex gadget."""
        for r in sorted(self.rooms):
            if len(self.adj[r]) <= 3:
                continue
            ss = sorted(self.adj[r] & self.singles)
            cs = sorted(self.adj[r] & self.couples)
            if len(ss) < 2 or len(cs) > 1:
                continue
            s1, s2 = ss[:2]
            n_s1, n_s2 = self.add(self.singles, "s"), self.add(self.singles, "s")
            h_s1, h_s2 = self.add(self.singles, "s"), self.add(self.singles, "s")
            s_or = self.add(self.singles, "s")
            h_or = self.add(self.singles, "s")
            c_p = self.add(self.couples, "c")
            c_and = self.add(self.couples, "c")
            c3, c4, c5 = (self.add(self.couples, "c") for _ in range(3))
            r_p = self.add(self.rooms, "r")
            r1, r2 = self.add(self.rooms, "r"), self.add(self.rooms, "r")
            r_and = self.add(self.rooms, "r")
            r_or = self.add(self.rooms, "r")
            r3, r4, r5 = (self.add(self.rooms, "r") for _ in range(3))
            self.unlink(s1, r)
            self.unlink(s2, r)
            for a, b in ((s1, r1), (n_s1, r1), (h_s1, r1), (n_s1, r3), (h_or, r3),
                         (c3, r3), (c3, r5),
                         (s2, r2), (n_s2, r2), (h_s2, r2), (n_s2, r4), (h_or, r4),
                         (c4, r4), (c4, r5),
                         (c5, r5), (s_or, r_or), (h_or, r_or), (c5, r_or),
                         (s_or, r), (c_p, r), (c_p, r_p),
                         (c_and, r_p), (c_and, r_and),
                         (n_s1, r_and), (n_s2, r_and)):
                self.link(a, b)
            for c in cs:
                self.unlink(c, r)
                self.link(c, r_p)
            return True
        return False

    # -- degree-1 repairs --------------------------------------------------

    def has_half_empty_room(self) -> bool:
        """Room adjacent to exactly one single and no couples can never be
        filled; the whole instance is a no-instance."""
        for r in self.rooms:
            if len(self.adj[r]) == 1 and self.adj[r] & self.singles:
                return True
        return False

    def has_isolated_vertex(self) -> bool:
        return any(not self.adj[v] for v in self.adj)

    def repair_degree1_single(self) -> bool:
        for s in sorted(self.singles):
            if len(self.adj[s]) == 1:
                r = self.add(self.rooms, "r")
                r2 = self.add(self.rooms, "r")
                s2 = self.add(self.singles, "s")
                s3 = self.add(self.singles, "s")
                c = self.add(self.couples, "c")
                for a, b in ((s, r2), (c, r), (s2, r), (s3, r), (s2, r2), (s3, r2)):
                    self.link(a, b)
                return True
        return False

    def repair_degree1_couple_side(self) -> bool:
        """Degree-1 couples and rooms adjacent to exactly one couple get a
        K(2,2) couples-rooms gadget hung off them."""
        pivots = [c for c in sorted(self.couples) if len(self.adj[c]) == 1]
        pivots += [r for r in sorted(self.rooms)
                   if len(self.adj[r]) == 1 and self.adj[r] & self.couples]
        for v in pivots:
            r = self.add(self.rooms, "r")
            r2 = self.add(self.rooms, "r")
            c = self.add(self.couples, "c")
            c2 = self.add(self.couples, "c")
            for a, b in ((c, r), (c2, r), (c, r2), (c2, r2)):
                self.link(a, b)
            self.link(v, c if v in self.rooms else r)
            return True
        return False


def mmc_normalize(m: MmcInstance) -> MmcInstance:
    """Rewrite `m` into an equivalent normal-form instance (see module doc).

    Trivial no-instances come out as the canonical no-instance G0.
    """
    rw = _Rewriter(m)

    padding = 2 * len(rw.rooms) - (len(rw.singles) + 2 * len(rw.couples))
    if padding < 0:
        return no_instance_g0()  # more people than room capacity
    for _ in range(padding):
        s = rw.add(rw.singles, "pad")
        for r in rw.rooms:
            rw.link(s, r)
    if rw.has_isolated_vertex():
        return no_instance_g0()

    rules = [rw.rule_split_mixed, rw.rule_drop_half_room_edge, rw.rule_single_degree,
             rw.rule_couple_degree, rw.rule_room_degree_couples,
             rw.rule_room_degree_singles]
    budget = 2 * sum(len(rw.adj[p]) for p in rw.singles | rw.couples) + len(rw.rooms)
    applications = 0
    while any(rule() for rule in rules):
        applications += 1
        if applications > budget:
            raise AssertionError("degree reduction exceeded its termination bound")

    if rw.has_isolated_vertex() or rw.has_half_empty_room():
        return no_instance_g0()
    while rw.repair_degree1_single():
        pass
    while rw.repair_degree1_couple_side():
        pass

    result = rw.freeze()
    if not is_normal_form(result):
        raise AssertionError("rewriting did not reach the normal form")
    return result
