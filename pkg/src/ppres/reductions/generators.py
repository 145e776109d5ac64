"""Constructive reductions into Possible President instances.

Each generator maps a source instance (3-coloring, multicolored clique,
3-SAT) to a nomination instance that is a yes-instance of Possible
President under the stated rule iff the source is a yes-instance.  The
preference profiles are assembled out of blocks; ordered set blocks follow
a fixed total order (lexicographic candidate id), written fwd/rev here.

All generated instances have maximum party size two and put the
distinguished party first.
"""

from __future__ import annotations

from ..elections import Alpha, Election, NominationInstance
from ..errors import GeneratorError
from .graphs import ColoredGraph
from .sat import CnfFormula


def _fwd(ids) -> list[str]:
    return sorted(ids)


def _rev(ids) -> list[str]:
    return sorted(ids, reverse=True)


def _instance(voters, parties) -> NominationInstance:
    flat = [c for p in parties for c in p]
    if len(flat) != len(set(flat)):
        raise GeneratorError("derived candidate ids collide; rename the input vertices")
    e = Election(frozenset(flat), tuple(tuple(r) for r in voters))
    return NominationInstance(e, tuple(frozenset(p) for p in parties), 0)


# --- 3-coloring -> Copeland^alpha (alpha < 1), two voters --------------------


def gen_3col_copeland_2v(g: ColoredGraph) -> NominationInstance:
    """Two-voter instance that is yes under Copeland^alpha for every
    alpha < 1 iff the graph is 3-colorable.

    Per vertex u and color c there is a party {u@c, !u@c} (color choice),
    per edge {a,b} and color c a party {e@c:a, e@c:b}; blockers q:u force a
    color per vertex; p wins iff within each color block no nominee defeats
    another, which encodes properness.
    """
    if not g.vertices:
        raise GeneratorError("the construction needs at least one vertex")
    us = sorted(g.vertices)
    colors = (1, 2, 3)

    def ucand(u, c):
        return f"{u}@{c}"

    def nucand(u, c):
        return f"!{u}@{c}"

    def ecands(a, b, c):
        return f"{a}~{b}@{c}:{a}", f"{a}~{b}@{c}:{b}"

    def a_block(u, c):
        return _fwd(e for a, b in g.edges if u in (a, b)
                    for e in [ecands(a, b, c)[0 if a == u else 1]])

    def x_block(c):
        return [x for u in us for x in (ucand(u, c), *a_block(u, c))]

    def x_block_rev(c):
        return [x for u in reversed(us) for x in (ucand(u, c), *reversed(a_block(u, c)))]

    y = [x for u in us for x in (f"q:{u}", nucand(u, 1), nucand(u, 2), nucand(u, 3))]
    y_rev = [x for u in reversed(us) for x in (f"q:{u}", nucand(u, 1), nucand(u, 2), nucand(u, 3))]
    head = ["p", "p'1", "p'2", "p'3"]

    voter_v = head + y + x_block(1) + x_block(2) + x_block(3) + ["d", "d'"]
    voter_vp = x_block_rev(3) + x_block_rev(2) + x_block_rev(1) + ["d", "d'"] + y_rev + head

    parties: list[list[str]] = [["p"], ["p'1"], ["p'2"], ["p'3"], ["d"], ["d'"]]
    parties += [[f"q:{u}"] for u in us]
    parties += [[ucand(u, c), nucand(u, c)] for u in us for c in colors]
    parties += [list(ecands(a, b, c)) for a, b in sorted(g.edges) for c in colors]
    return _instance([voter_v, voter_vp], parties)


# --- 3-coloring -> Llull, four voters ----------------------------------------


def gen_3col_llull_4v(g: ColoredGraph) -> NominationInstance:
    """Four-voter instance that is yes under Llull iff the graph is
    3-colorable; in every reduced election the distinguished nominee p is
    never defeated, so its Llull score is exactly t-1."""
    us = sorted(g.vertices)
    colors = (1, 2, 3)

    def ucand(u, c):
        return f"{u}@{c}"

    def nucand(u, c):
        return f"!{u}@{c}"

    def ecands(a, b, c):
        return f"{a}~{b}@{c}:{a}", f"{a}~{b}@{c}:{b}"

    def a_block(u, c):
        return _fwd(e for a, b in g.edges if u in (a, b)
                    for e in [ecands(a, b, c)[0 if a == u else 1]])

    def x_block(c):
        return [x for u in us for x in (ucand(u, c), *a_block(u, c))]

    def x_block_rev(c):
        return [x for u in reversed(us) for x in (ucand(u, c), *reversed(a_block(u, c)))]

    q_ids = [f"q:{u}" for u in us]
    u_all = [ucand(u, c) for u in us for c in colors]
    nu_all = [nucand(u, c) for u in us for c in colors]
    e_all = [x for a, b in g.edges for c in colors for x in ecands(a, b, c)]
    z = [x for u in us for x in (nucand(u, 1), nucand(u, 2), nucand(u, 3), f"q:{u}")]
    z_rev = [x for u in reversed(us)
             for x in (nucand(u, 1), nucand(u, 2), nucand(u, 3), f"q:{u}")]

    voter_v = ["p"] + _fwd(q_ids) + x_block(1) + x_block(2) + x_block(3) + _fwd(nu_all)
    voter_vp = x_block_rev(3) + x_block_rev(2) + x_block_rev(1) + _rev(nu_all) + _rev(q_ids) + ["p"]
    voter_w = _fwd(e_all) + ["p"] + z + _fwd(u_all)
    voter_wp = z_rev + _rev(u_all) + ["p"] + _rev(e_all)

    parties: list[list[str]] = [["p"]]
    parties += [[q] for q in _fwd(q_ids)]
    parties += [[ucand(u, c), nucand(u, c)] for u in us for c in colors]
    parties += [list(ecands(a, b, c)) for a, b in sorted(g.edges) for c in colors]
    return _instance([voter_v, voter_vp, voter_w, voter_wp], parties)


# --- multicolored clique -> Copeland^alpha (alpha < 1) ------------------------


def gen_mcq_copeland(g: ColoredGraph, alpha: Alpha) -> NominationInstance:
    """Instance with parties {p}, {p'} and the color classes; two voters per
    non-edge of the graph.  Yes under Copeland^alpha (alpha < 1) iff the
    graph has a clique with one vertex per class.

    In every reduced election p defeats p' and ties everything else, so its
    score is exactly alpha*k + 1 (wins=1, ties=k).
    """
    if alpha.num == alpha.den:
        raise GeneratorError("the construction requires alpha < 1")
    if g.classes is None:
        raise GeneratorError("multicolored clique input needs color classes")
    for cls in g.classes:
        for a in cls:
            for b in cls:
                if a < b and g.adjacent(a, b):
                    raise GeneratorError("color classes must be independent sets")
    u_all = set(g.vertices)
    if "p" in u_all or "p'" in u_all:
        raise GeneratorError("vertex names 'p' and \"p'\" are reserved")

    voters: list[list[str]] = []
    for i, cls_i in enumerate(g.classes):
        for cls_j in g.classes[i + 1:]:
            for u in sorted(cls_i):
                for up in sorted(cls_j):
                    if not g.adjacent(u, up):
                        rest = u_all - {u, up}
                        voters.append([u, up, *_fwd(rest), "p", "p'"])
                        voters.append(["p", "p'", *_rev(rest), u, up])
    if not voters:
        # No non-edges: every transversal is a clique.  The paper's voter set
        # would be empty; one opposite-ranking pair keeps p defeating p' and
        # everything else tied.
        voters = [["p", "p'", *_fwd(u_all)], [*_rev(u_all), "p", "p'"]]

    parties: list[list[str]] = [["p"], ["p'"]] + [sorted(cls) for cls in g.classes]
    return _instance(voters, parties)


# --- 3-SAT -> Maximin, four and five voters -----------------------------------


def _sat_ids(f: CnfFormula):
    lits = {}
    for v in range(1, f.num_vars + 1):
        lits[v] = f"x{v}"
        lits[-v] = f"~x{v}"
    cpos = {(k, j): f"c{k}.{j}" for k in range(1, len(f.clauses) + 1) for j in (1, 2, 3)}
    cneg = {(k, j): f"c{k}.{j}-" for k in range(1, len(f.clauses) + 1) for j in (1, 2, 3)}
    occurrences: dict[int, list[tuple[int, int]]] = {lit: [] for lit in lits}
    for k, clause in enumerate(f.clauses, start=1):
        for j, lit in enumerate(clause, start=1):
            occurrences[lit].append((k, j))
    return lits, cpos, cneg, occurrences


def _sat_blocks(f: CnfFormula):
    lits, cpos, cneg, occ = _sat_ids(f)
    m = len(f.clauses)
    y = {k: [cpos[(k, 1)], cpos[(k, 2)], cpos[(k, 3)],
             cneg[(k, 1)], cneg[(k, 2)], cneg[(k, 3)]] for k in range(1, m + 1)}
    y_rev = {k: [cpos[(k, 3)], cpos[(k, 2)], cpos[(k, 1)],
                 cneg[(k, 3)], cneg[(k, 2)], cneg[(k, 1)]] for k in range(1, m + 1)}
    f_blk = {lit: [lits[lit], *_fwd(cpos[o] for o in occ[lit])] for lit in lits}
    f_blk_rev = {lit: [lits[lit], *_rev(cpos[o] for o in occ[lit])] for lit in lits}
    return lits, cpos, cneg, y, y_rev, f_blk, f_blk_rev


def _sat_parties(f: CnfFormula, lits, cpos, cneg, extra_head) -> list[list[str]]:
    parties: list[list[str]] = [["p"]] + [[h] for h in extra_head]
    parties += [[lits[v], lits[-v]] for v in range(1, f.num_vars + 1)]
    parties += [[cpos[(k, j)], cneg[(k, j)]]
                for k in range(1, len(f.clauses) + 1) for j in (1, 2, 3)]
    return parties


def gen_3sat_maximin_4v(f: CnfFormula) -> NominationInstance:
    """Four-voter Maximin instance, satisfiable iff yes.  p ties every other
    nominee, so MM(p) = 2 in every reduced election; the formula must be
    nontrivial so that some clause party can nominate a defeated candidate."""
    if not f.is_nontrivial:
        raise GeneratorError("the formula must use some variable in both polarities")
    lits, cpos, cneg, y, y_rev, f_blk, f_blk_rev = _sat_blocks(f)
    m, n = len(f.clauses), f.num_vars
    fwd_l, rev_l = _fwd(lits.values()), _rev(lits.values())
    fwd_cm, rev_cm = _fwd(cneg.values()), _rev(cneg.values())

    voter_v = ["p", "p'"] + fwd_l + [x for k in range(1, m + 1) for x in y[k]]
    voter_vp = ["p"] + [x for k in range(m, 0, -1) for x in y_rev[k]] + ["p'"] + rev_l
    voter_w = fwd_cm + ["p'"] \
        + [x for v in range(1, n + 1) for x in f_blk[v]] \
        + [x for v in range(1, n + 1) for x in f_blk[-v]] + ["p"]
    voter_wp = [x for v in range(n, 0, -1) for x in f_blk_rev[-v]] \
        + [x for v in range(n, 0, -1) for x in f_blk_rev[v]] + rev_cm + ["p'", "p"]
    return _instance([voter_v, voter_vp, voter_w, voter_wp],
                     _sat_parties(f, lits, cpos, cneg, ["p'"]))


def gen_3sat_maximin_5v(f: CnfFormula) -> NominationInstance:
    """Five-voter variant with an extra blocker p'' and an extra voter whose
    preferences are almost opposite to the rest."""
    if not f.is_nontrivial:
        raise GeneratorError("the formula must use some variable in both polarities")
    lits, cpos, cneg, y, y_rev, f_blk, f_blk_rev = _sat_blocks(f)
    m, n = len(f.clauses), f.num_vars
    fwd_l, rev_l = _fwd(lits.values()), _rev(lits.values())
    fwd_cm, rev_cm = _fwd(cneg.values()), _rev(cneg.values())
    fwd_cp = _fwd(cpos.values())

    voter_v = ["p"] + fwd_l + [x for k in range(1, m + 1) for x in y[k]] + ["p'", "p''"]
    voter_vp = ["p"] + [x for k in range(m, 0, -1) for x in y_rev[k]] + ["p'", "p''"] + rev_l
    voter_w = ["p''"] \
        + [x for v in range(1, n + 1) for x in f_blk[v]] \
        + [x for v in range(1, n + 1) for x in f_blk[-v]] + fwd_cm + ["p'", "p"]
    voter_wp = ["p'", "p''"] \
        + [x for v in range(n, 0, -1) for x in f_blk_rev[-v]] \
        + [x for v in range(n, 0, -1) for x in f_blk_rev[v]] + rev_cm + ["p"]
    voter_z = fwd_cm + ["p'", "p''"] + fwd_l + fwd_cp + ["p"]
    return _instance([voter_v, voter_vp, voter_w, voter_wp, voter_z],
                     _sat_parties(f, lits, cpos, cneg, ["p'", "p''"]))
