"""Partitioned subdigraph isomorphism for patterns of maximum indegree 1.

Given a pattern digraph D, a host digraph H and a labelling of host vertices
by pattern vertices, decide whether H contains a subdigraph isomorphic to D
via a mapping that sends every pattern vertex to a host vertex carrying its
label.  Patterns with indegree at most 1 reduce, by two rewriting rules, to
isolated vertices with optional loops, which makes the check linear:

* leaf rule: a pattern vertex with out-degree 0 and a single in-neighbour u
  is removed, together with its label class and every u-labelled host vertex
  lacking an out-neighbour in that class;
* cycle rule: a pattern vertex v with unique in-neighbour u and unique
  out-neighbour w (and no arc (u, w) yet) is contracted, the host arcs from
  the u-class to the w-class being replaced by the two-step connections
  through the v-class.

Every rule application is logged so that a full embedding can be replayed
out of the final assignment.  A brute-force matcher doubles as the oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Hashable, Mapping

from .errors import BudgetExceededError

Vertex = Hashable

DEFAULT_MAX_ASSIGNMENTS = 2 ** 20


@dataclass(frozen=True)
class Digraph:
    """A digraph without parallel arcs; loops are permitted."""

    vertices: frozenset
    arcs: frozenset

    def __post_init__(self) -> None:
        for a, b in self.arcs:
            if a not in self.vertices or b not in self.vertices:
                raise ValueError(f"arc ({a!r}, {b!r}) has an endpoint outside the vertex set")

    def out_neighbors(self, v) -> set:
        return {b for a, b in self.arcs if a == v}

    def in_neighbors(self, v) -> set:
        return {a for a, b in self.arcs if b == v}


def digraph(vertices, arcs) -> Digraph:
    return Digraph(frozenset(vertices), frozenset((a, b) for a, b in arcs))


@dataclass(frozen=True)
class PsiInstance:
    pattern: Digraph
    host: Digraph
    label: Mapping  # host vertex -> pattern vertex

    def __post_init__(self) -> None:
        if set(self.label.keys()) != set(self.host.vertices):
            raise ValueError("label must be total on the host vertices")
        for v in self.label.values():
            if v not in self.pattern.vertices:
                raise ValueError(f"label value {v!r} is not a pattern vertex")

    def label_class(self, v) -> set:
        return {x for x, lv in self.label.items() if lv == v}


@dataclass(frozen=True)
class LeafStep:
    """Removal of leaf v (in-neighbour u); `next_in_class` maps every
    surviving u-labelled host vertex to one of its out-neighbours in the
    removed class."""

    vertex: Vertex
    source: Vertex
    next_in_class: Mapping


@dataclass(frozen=True)
class CycleStep:
    """Contraction of v on the path u -> v -> w; `through` maps every arc
    added between the u- and w-classes to an intermediate host vertex."""

    vertex: Vertex
    source: Vertex
    target: Vertex
    through: Mapping


RuleTrace = list  # of LeafStep | CycleStep


class _State:
    """Mutable working copy of a PsiInstance."""

    def __init__(self, inst: PsiInstance):
        self.pvertices = set(inst.pattern.vertices)
        self.parcs = set(inst.pattern.arcs)
        self.hvertices = set(inst.host.vertices)
        self.harcs = set(inst.host.arcs)
        self.gamma = dict(inst.label)
        self.classes: dict = {v: set() for v in self.pvertices}
        for x, v in self.gamma.items():
            self.classes[v].add(x)

    def freeze(self) -> PsiInstance:
        return PsiInstance(
            Digraph(frozenset(self.pvertices), frozenset(self.parcs)),
            Digraph(frozenset(self.hvertices), frozenset(self.harcs)),
            dict(self.gamma),
        )

    def p_out(self, v) -> set:
        return {b for a, b in self.parcs if a == v}

    def p_in(self, v) -> set:
        return {a for a, b in self.parcs if b == v}

    def _drop_host_vertices(self, doomed: set) -> None:
        self.hvertices -= doomed
        self.harcs = {(a, b) for a, b in self.harcs if a not in doomed and b not in doomed}
        for x in doomed:
            del self.gamma[x]

    def leaf_pivot(self):
        for v in sorted(self.pvertices, key=str):
            ins = self.p_in(v)
            if not self.p_out(v) and len(ins) == 1 and v not in ins:
                return v, next(iter(ins))
        return None

    def apply_leaf(self, v, u) -> LeafStep:
        class_v = self.classes[v]
        out = {x: sorted((b for a, b in self.harcs if a == x and b in class_v), key=str)
               for x in self.classes[u]}
        survivors = {x: nbrs[0] for x, nbrs in out.items() if nbrs}
        doomed = (self.classes[u] - survivors.keys()) | class_v
        self._drop_host_vertices(doomed)
        self.classes[u] = set(survivors.keys())
        del self.classes[v]
        self.pvertices.discard(v)
        self.parcs = {(a, b) for a, b in self.parcs if v not in (a, b)}
        return LeafStep(v, u, survivors)

    def cycle_pivot(self):
        for v in sorted(self.pvertices, key=str):
            outs, ins = self.p_out(v), self.p_in(v)
            if len(outs) == 1 and len(ins) == 1 and v not in outs:
                u, w = next(iter(ins)), next(iter(outs))
                if (u, w) not in self.parcs:
                    return v, u, w
        return None

    def apply_cycle(self, v, u, w) -> CycleStep:
        class_u, class_v, class_w = self.classes[u], self.classes[v], self.classes[w]
        out_of: dict = {x: set() for x in class_u}
        into: dict = {y: set() for y in class_w}
        for a, b in self.harcs:
            if a in class_u and b in class_v:
                out_of[a].add(b)
            if a in class_v and b in class_w:
                into[b].add(a)
        through = {}
        for x in class_u:
            for y in class_w:
                mids = out_of[x] & into[y]
                if mids:
                    through[(x, y)] = min(mids, key=str)
        self._drop_host_vertices(set(class_v))
        self.harcs = {(a, b) for a, b in self.harcs if not (a in class_u and b in class_w)}
        self.harcs |= set(through.keys())
        del self.classes[v]
        self.pvertices.discard(v)
        self.parcs = {(a, b) for a, b in self.parcs if v not in (a, b)}
        self.parcs.add((u, w))
        return CycleStep(v, u, w, through)


def apply_rule_leaf(inst: PsiInstance):
    """One application of the leaf rule, or None if it does not apply."""
    state = _State(inst)
    pivot = state.leaf_pivot()
    if pivot is None:
        return None
    step = state.apply_leaf(*pivot)
    return state.freeze(), step


def apply_rule_cycle(inst: PsiInstance):
    """One application of the cycle rule, or None if it does not apply."""
    state = _State(inst)
    pivot = state.cycle_pivot()
    if pivot is None:
        return None
    step = state.apply_cycle(*pivot)
    return state.freeze(), step


def _check_fast_precondition(pattern: Digraph) -> None:
    for v in pattern.vertices:
        if (v, v) in pattern.arcs:
            raise ValueError("the fast solver rejects patterns with loops")
        if len(pattern.in_neighbors(v)) > 1:
            raise ValueError("the fast solver requires pattern indegree at most 1")


def solve_psi(inst: PsiInstance) -> tuple[bool, dict | None]:
    """Decide the instance; on success also return an embedding that is
    valid in the original instance."""
    _check_fast_precondition(inst.pattern)
    state = _State(inst)
    trace: RuleTrace = []
    while (pivot := state.leaf_pivot()) is not None:
        trace.append(state.apply_leaf(*pivot))
    while (pivot := state.cycle_pivot()) is not None:
        trace.append(state.apply_cycle(*pivot))
    for a, b in state.parcs:
        if a != b:
            raise AssertionError("rule exhaustion left a non-loop pattern arc")

    embedding: dict = {}
    for v in state.pvertices:
        needs_loop = (v, v) in state.parcs
        options = [x for x in sorted(state.classes[v], key=str)
                   if not needs_loop or (x, x) in state.harcs]
        if not options:
            return False, None
        embedding[v] = options[0]

    for step in reversed(trace):
        if isinstance(step, LeafStep):
            embedding[step.vertex] = step.next_in_class[embedding[step.source]]
        else:
            key = (embedding[step.source], embedding[step.target])
            embedding[step.vertex] = step.through[key]

    if not embedding_valid(inst, embedding):
        raise AssertionError("reconstructed embedding fails on the original instance")
    return True, embedding


def embedding_valid(inst: PsiInstance, embedding: Mapping) -> bool:
    if set(embedding.keys()) != set(inst.pattern.vertices):
        return False
    for v, x in embedding.items():
        if x not in inst.host.vertices or inst.label[x] != v:
            return False
    for a, b in inst.pattern.arcs:
        if (embedding[a], embedding[b]) not in inst.host.arcs:
            return False
    return True


def brute_force_psi(inst: PsiInstance,
                    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> dict | None:
    """Exhaustive label-respecting search; lexicographically smallest
    embedding or None.  Accepts arbitrary patterns (loops, any indegree)."""
    pvertices = sorted(inst.pattern.vertices, key=str)
    pools = [sorted(inst.label_class(v), key=str) for v in pvertices]
    total = 1
    for pool in pools:
        total *= len(pool)
        if total > max_assignments:
            raise BudgetExceededError(
                f"{total}+ assignments exceed the guard of {max_assignments}")
    arcs = inst.host.arcs
    for assignment in product(*pools):
        f = dict(zip(pvertices, assignment))
        if all((f[a], f[b]) in arcs for a, b in inst.pattern.arcs):
            return f
    return None


# --- serialization (test corpora) ------------------------------------------


def digraph_to_dict(g: Digraph) -> dict:
    return {"vertices": sorted(g.vertices, key=str),
            "arcs": sorted(([a, b] for a, b in g.arcs), key=str)}


def instance_to_json(inst: PsiInstance) -> str:
    doc = {
        "pattern": digraph_to_dict(inst.pattern),
        "host": digraph_to_dict(inst.host),
        "labels": {str(x): inst.label[x] for x in sorted(inst.host.vertices, key=str)},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def instance_from_json(text: str) -> PsiInstance:
    doc = json.loads(text)
    pattern = digraph(doc["pattern"]["vertices"], doc["pattern"]["arcs"])
    host = digraph(doc["host"]["vertices"], doc["host"]["arcs"])
    return PsiInstance(pattern, host, dict(doc["labels"]))
