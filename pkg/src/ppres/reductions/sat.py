"""3-CNF formulas, DIMACS parsing and an exhaustive satisfiability oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..errors import BudgetExceededError

Clause = tuple[int, int, int]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause {clause} does not have exactly three literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    @property
    def is_nontrivial(self) -> bool:
        """Some variable occurs both as a positive and a negative literal."""
        pos = {lit for c in self.clauses for lit in c if lit > 0}
        neg = {-lit for c in self.clauses for lit in c if lit < 0}
        return bool(pos & neg)


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed problem line")
            num_vars = int(parts[2])
            continue
        lits = [int(tok) for tok in line.split()]
        if not lits or lits[-1] != 0:
            raise ValueError(f"line {lineno}: clause must be 0-terminated")
        clause = tuple(lits[:-1])
        if len(clause) != 3:
            raise ValueError(f"line {lineno}: expected exactly three literals")
        clauses.append(clause)  # type: ignore[arg-type]
    if num_vars is None:
        raise ValueError("missing 'p cnf' line")
    return CnfFormula(num_vars, tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines.extend(" ".join(map(str, clause)) + " 0" for clause in f.clauses)
    return "\n".join(lines) + "\n"


def solve_3sat(f: CnfFormula, max_assignments: int = 2 ** 22) -> dict[int, bool] | None:
    """A satisfying assignment var->bool, or None."""
    if 2 ** f.num_vars > max_assignments:
        raise BudgetExceededError(
            f"2^{f.num_vars} assignments exceed {max_assignments}")
    for bits in product((False, True), repeat=f.num_vars):
        assignment = {v + 1: bits[v] for v in range(f.num_vars)}
        if all(any(assignment[abs(lit)] == (lit > 0) for lit in clause)
               for clause in f.clauses):
            return assignment
    return None
