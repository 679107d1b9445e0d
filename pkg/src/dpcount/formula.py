"""Clausal formulas and DIMACS I/O.

Literals are nonzero ints in the DIMACS convention: ``v`` for variable
``v`` (1-based), ``-v`` for its negation.  A clause is a frozenset of
literals, so duplicate literals collapse on construction; a clause may
contain a complementary pair (a tautology) and may be empty.  A formula
is an ordered tuple of clauses plus the declared size of the variable
universe, which may exceed the variables actually occurring.  Duplicate
clauses are preserved.

All operations here are pure; Formula values are immutable and safe to
share between threads or processes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Optional, Union


class ParseError(ValueError):
    """Malformed DIMACS input.  Carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DimacsWarning(UserWarning):
    """Recoverable oddity in a DIMACS file (header clause count mismatch)."""


def complement(lit: int) -> int:
    """Negation of a literal: complement(complement(l)) == l."""
    return -lit


def variable(lit: int) -> int:
    """1-based variable index of a literal."""
    return abs(lit)


def is_positive(lit: int) -> bool:
    return lit > 0


def is_tautology(clause: frozenset[int]) -> bool:
    """True when some variable occurs in both polarities."""
    return any(-lit in clause for lit in clause)


@dataclass(frozen=True)
class Formula:
    """An ordered multiset of clauses over variables 1..num_vars.

    ``syntax`` is "cnf" (clauses are disjunctions) or "dnf" (the same
    structure read as a disjunction of conjunctive terms).  It controls
    I/O headers and which counting entry point applies; the data layout
    is identical.
    """

    clauses: tuple[frozenset[int], ...]
    num_vars: int
    syntax: str = "cnf"

    def __post_init__(self):
        if self.syntax not in ("cnf", "dnf"):
            raise ValueError(f"unknown syntax {self.syntax!r}")
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        normalized = tuple(frozenset(c) for c in self.clauses)
        for c in normalized:
            for lit in c:
                if not isinstance(lit, int) or lit == 0:
                    raise ValueError(f"invalid literal {lit!r}")
                if abs(lit) > self.num_vars:
                    raise ValueError(
                        f"literal {lit} exceeds num_vars={self.num_vars}"
                    )
        object.__setattr__(self, "clauses", normalized)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.clauses)


def occurring_variables(formula: Formula) -> set[int]:
    """Variables that actually appear in some clause."""
    return {abs(lit) for clause in formula.clauses for lit in clause}


def parse_dimacs(source: Union[str, IO[str]]) -> Formula:
    """Parse DIMACS CNF (header ``p cnf n m``) or DNF (``p dnf n m``).

    Lines starting with "c" are comments.  Clauses are whitespace
    separated nonzero integers terminated by 0 and may span lines.
    Duplicate literals within a clause collapse; duplicate clauses and
    tautologies are preserved.  A header clause count that disagrees
    with the actual count raises DimacsWarning; the actual count wins.
    """
    lines = source.splitlines() if isinstance(source, str) else source
    num_vars = None
    declared_clauses = None
    syntax = "cnf"
    clauses: list[frozenset[int]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(lines, 1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise ParseError("duplicate header", lineno)
            fields = line.split()
            if len(fields) != 4 or fields[1] not in ("cnf", "dnf"):
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                num_vars = int(fields[2])
                declared_clauses = int(fields[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or declared_clauses < 0:
                raise ParseError(f"malformed header {line!r}", lineno)
            syntax = fields[1]
            continue
        if num_vars is None:
            raise ParseError("clause data before header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"non-integer token {token!r}", lineno) from None
            if lit == 0:
                clauses.append(frozenset(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError(
                        f"variable index {abs(lit)} out of range "
                        f"(num_vars={num_vars})",
                        lineno,
                    )
                current.append(lit)
    if num_vars is None:
        raise ParseError("missing header", max(last_line, 1))
    if current:
        raise ParseError("unterminated final clause (no trailing 0)", last_line)
    if declared_clauses != len(clauses):
        warnings.warn(
            f"header declares {declared_clauses} clauses, found {len(clauses)}",
            DimacsWarning,
            stacklevel=2,
        )
    return Formula(tuple(clauses), num_vars, syntax)


def emit_dimacs(formula: Formula) -> str:
    """Serialize to DIMACS; parse_dimacs(emit_dimacs(F)) == F."""
    out = [f"p {formula.syntax} {formula.num_vars} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lits = sorted(clause, key=lambda l: (abs(l), l < 0))
        out.append(" ".join(str(l) for l in lits + [0]))
    return "\n".join(out) + "\n"


def assign(formula: Formula, lit: int) -> Formula:
    """The formula obtained by making ``lit`` true.

    Clauses containing ``lit`` are deleted and the complement of ``lit``
    is removed from the rest.  A tautological clause on lit's variable
    contains both literals, so it vanishes from both branches of a
    split.  Variables are never renumbered and num_vars is unchanged;
    the remaining-variable budget is the caller's bookkeeping.
    """
    if lit == 0 or abs(lit) > formula.num_vars:
        raise ValueError(f"literal {lit} out of range")
    neg = -lit
    kept = []
    for clause in formula.clauses:
        if lit in clause:
            continue
        if neg in clause:
            kept.append(clause - {neg})
        else:
            kept.append(clause)
    return Formula(tuple(kept), formula.num_vars, formula.syntax)


def find_unit(formula: Formula) -> Optional[int]:
    """Literal of the first one-literal clause in clause order, if any."""
    for clause in formula.clauses:
        if len(clause) == 1:
            return next(iter(clause))
    return None


def occurrence_counts(formula: Formula) -> dict[int, tuple[int, int]]:
    """Per-variable clause occurrence counts as {var: (pos, neg)}.

    Counts are per clause occurrence, so duplicate clauses count twice
    and a tautological clause contributes to both polarities.  Variables
    that never occur are absent from the table (counts (0, 0)).
    """
    table: dict[int, tuple[int, int]] = {}
    for clause in formula.clauses:
        for lit in clause:
            var = abs(lit)
            pos, neg = table.get(var, (0, 0))
            if lit > 0:
                table[var] = (pos + 1, neg)
            else:
                table[var] = (pos, neg + 1)
    return table


def negate(formula: Formula) -> Formula:
    """Complement every literal of every clause (De Morgan dual).

    Maps a DNF formula to the CNF of its negation and vice versa, so the
    syntax tag flips.
    """
    flipped = tuple(frozenset(-l for l in c) for c in formula.clauses)
    other = "dnf" if formula.syntax == "cnf" else "cnf"
    return Formula(flipped, formula.num_vars, other)
