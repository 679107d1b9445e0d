"""Brute-force model counting over all assignments, for ground truth.

Independent of the splitting engine: every one of the 2**k assignments
to the occurring variables is evaluated against every clause, then the
result is scaled by 2**(n - k) for the free variables.  The assignment
space is swept as one big-int truth table (bit b of a variable's table
is the variable's value under assignment number b, assignments ordered
lexicographically), so a clause evaluation is a bitwise OR and the
formula is the AND of its clauses.  Cost is still Theta(m * 2**k);
max_vars guards against accidental blowups.
"""

from __future__ import annotations

from typing import Optional

from .formula import Formula, occurring_variables

DEFAULT_MAX_VARS = 30


class OracleLimitError(RuntimeError):
    """Enumeration refused: 2**n assignments exceed the configured limit."""


def _tables(order: list[int]) -> tuple[dict[int, int], int]:
    """Truth table mask per variable plus the all-ones mask.

    Variable order[i] takes value (b >> i) & 1 under assignment b, so
    its table is the periodic pattern of 2**i zeros then 2**i ones.
    """
    k = len(order)
    size = 1 << k
    full = (1 << size) - 1
    tables = {}
    for i, var in enumerate(order):
        block = ((1 << (1 << i)) - 1) << (1 << i)
        width = 1 << (i + 1)
        while width < size:
            block |= block << width
            width <<= 1
        tables[var] = block
    return tables, full


def brute_force_count(
    formula: Formula, n: Optional[int] = None, max_vars: int = DEFAULT_MAX_VARS
) -> int:
    """Exact CNF model count over an n-variable universe by enumeration."""
    if n is None:
        n = formula.num_vars
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_vars:
        raise OracleLimitError(f"n={n} exceeds the enumeration limit {max_vars}")
    order = sorted(occurring_variables(formula))
    if len(order) > n:
        raise ValueError(
            f"{len(order)} distinct variables occur but the budget is n={n}"
        )
    tables, full = _tables(order)
    models = full
    for clause in formula.clauses:
        satisfied = 0
        for lit in clause:
            if lit > 0:
                satisfied |= tables[lit]
            else:
                satisfied |= full ^ tables[-lit]
        models &= satisfied
        if not models:
            break
    return models.bit_count() << (n - len(order))


def brute_force_count_dnf(
    formula: Formula, n: Optional[int] = None, max_vars: int = DEFAULT_MAX_VARS
) -> int:
    """Exact DNF model count (some term fully true) by enumeration."""
    if n is None:
        n = formula.num_vars
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_vars:
        raise OracleLimitError(f"n={n} exceeds the enumeration limit {max_vars}")
    order = sorted(occurring_variables(formula))
    if len(order) > n:
        raise ValueError(
            f"{len(order)} distinct variables occur but the budget is n={n}"
        )
    tables, full = _tables(order)
    models = 0
    for term in formula.clauses:
        cube = full
        for lit in term:
            if lit > 0:
                cube &= tables[lit]
            else:
                cube &= full ^ tables[-lit]
        models |= cube
    return models.bit_count() << (n - len(order))
