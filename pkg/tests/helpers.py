"""Shared test utilities: dead-simple enumeration counters and random
formula factories.

naive_count is the ground truth everything else is checked against; it
iterates assignments one by one and evaluates clauses literally, with
no cleverness to get wrong.  Keep n small (<= 12 or so) where it is
used.
"""

from __future__ import annotations

import itertools
import random

from dpcount import (
    FixedWidthConfig,
    Formula,
    IndepModelConfig,
    gen_indep,
    gen_kcnf,
)


def naive_count(formula: Formula, n: int | None = None) -> int:
    if n is None:
        n = formula.num_vars
    count = 0
    for bits in itertools.product((False, True), repeat=n):
        ok = True
        for clause in formula.clauses:
            if not any(bits[abs(l) - 1] == (l > 0) for l in clause):
                ok = False
                break
        if ok:
            count += 1
    return count


def naive_count_dnf(formula: Formula, n: int | None = None) -> int:
    if n is None:
        n = formula.num_vars
    count = 0
    for bits in itertools.product((False, True), repeat=n):
        for term in formula.clauses:
            if all(bits[abs(l) - 1] == (l > 0) for l in term):
                count += 1
                break
    return count


def random_formula(rng: random.Random, n_max: int = 10, m_max: int = 30) -> Formula:
    """A random instance from one of the two generators, random params."""
    if rng.random() < 0.5:
        n = rng.randint(1, n_max)
        m = rng.randint(0, m_max)
        return gen_indep(
            IndepModelConfig(
                n=n,
                m=m,
                p1=rng.choice([0.1, 0.2, 0.3]),
                p2=rng.choice([0.1, 0.2, 0.3]),
                seed=rng.getrandbits(32),
            )
        )
    n = rng.randint(3, n_max) if n_max >= 3 else 3
    m = rng.randint(0, m_max)
    k = rng.choice([2, 3])
    return gen_kcnf(FixedWidthConfig(n=n, m=m, k=k, seed=rng.getrandbits(32)))


def cnf(clauses, num_vars) -> Formula:
    """Shorthand Formula constructor for literal clause lists."""
    return Formula(tuple(frozenset(c) for c in clauses), num_vars)
