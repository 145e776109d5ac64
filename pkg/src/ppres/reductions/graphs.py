"""Undirected graphs with optional color classes, plus the exhaustive
3-coloring and multicolored-clique oracles used for equivalence testing.

Text format (whitespace tokens, ``#`` comments):

    vertex a b c        # optional isolated-vertex declaration
    class a b           # optional color class (also declares its vertices)
    a b                 # an edge

"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from ..errors import BudgetExceededError


def edge(a: str, b: str) -> tuple[str, str]:
    if a == b:
        raise ValueError(f"self-loop at {a!r}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class ColoredGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    classes: tuple[frozenset[str], ...] | None = None

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(self.vertices) != len(vs):
            raise ValueError("duplicate vertex")
        for a, b in self.edges:
            if a >= b or a not in vs or b not in vs:
                raise ValueError(f"bad edge ({a!r}, {b!r})")
        if self.classes is not None:
            seen: set[str] = set()
            for cls in self.classes:
                if not cls or cls & seen:
                    raise ValueError("classes must be non-empty and disjoint")
                seen |= cls
            if seen != vs:
                raise ValueError("classes must partition the vertex set")

    def adjacent(self, a: str, b: str) -> bool:
        return edge(a, b) in self.edges

    def neighbors(self, v: str) -> set[str]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}


def colored_graph(vertices, edges, classes=None) -> ColoredGraph:
    return ColoredGraph(
        tuple(sorted(set(vertices))),
        frozenset(edge(a, b) for a, b in edges),
        None if classes is None else tuple(frozenset(c) for c in classes),
    )


def complete_graph(n: int, prefix: str = "u") -> ColoredGraph:
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return colored_graph(vs, combinations(vs, 2))


def parse_graph(text: str) -> ColoredGraph:
    vertices: set[str] = set()
    edges = []
    classes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            vertices.update(tokens[1:])
        elif tokens[0] == "class":
            if len(tokens) < 2:
                raise ValueError(f"line {lineno}: empty class")
            classes.append(frozenset(tokens[1:]))
            vertices.update(tokens[1:])
        elif len(tokens) == 2:
            vertices.update(tokens)
            edges.append(edge(*tokens))
        else:
            raise ValueError(f"line {lineno}: expected 'a b', 'vertex ...' or 'class ...'")
    return colored_graph(vertices, edges, classes or None)


def format_graph(g: ColoredGraph) -> str:
    lines = []
    covered: set[str] = set()
    if g.classes:
        for cls in g.classes:
            lines.append("class " + " ".join(sorted(cls)))
            covered |= cls
    for a, b in g.edges:
        covered |= {a, b}
    lonely = [v for v in g.vertices if v not in covered]
    if lonely:
        lines.append("vertex " + " ".join(lonely))
    lines.extend(f"{a} {b}" for a, b in sorted(g.edges))
    return "\n".join(lines) + "\n"


def solve_3coloring(g: ColoredGraph) -> dict[str, int] | None:
    """Backtracking search; a proper coloring with colors 1..3, or None."""
    order = sorted(g.vertices, key=lambda v: -len(g.neighbors(v)))
    coloring: dict[str, int] = {}

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for color in (1, 2, 3):
            if all(coloring.get(u) != color for u in g.neighbors(v)):
                coloring[v] = color
                if rec(i + 1):
                    return True
                del coloring[v]
        return False

    return coloring if rec(0) else None


def solve_mcq(g: ColoredGraph, max_combinations: int = 2 ** 22) -> set[str] | None:
    """A clique containing one vertex per color class, or None."""
    if g.classes is None:
        raise ValueError("multicolored clique needs color classes")
    total = 1
    for cls in g.classes:
        total *= len(cls)
    if total > max_combinations:
        raise BudgetExceededError(f"{total} transversals exceed {max_combinations}")
    pools = [sorted(cls) for cls in g.classes]
    for pick in product(*pools):
        if all(g.adjacent(a, b) for a, b in combinations(pick, 2)):
            return set(pick)
    return None
