"""Random CNF generators for the two experimental distributions.

Both generators are deterministic functions of their config, including
the seed (one PRNG stream per instance).  Batch runs derive instance
seeds as base_seed + instance_index, so instances are reproducible and
independent regardless of execution order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .formula import Formula


@dataclass(frozen=True)
class IndepModelConfig:
    """Independent-literal model.

    For every clause and every variable v, literal v is included with
    probability p1 and literal -v independently with probability p2, so
    clauses may come out empty, duplicated, or tautological; all three
    are kept by default.  With reject_empty, clauses that come out
    empty are redrawn (they would otherwise pin the count to 0), which
    consumes additional PRNG draws.
    """

    n: int
    m: int
    p1: float
    p2: float
    seed: int = 0
    reject_empty: bool = False

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be nonnegative")
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.p2 <= 1.0):
            raise ValueError("p1 and p2 must lie in [0, 1]")


@dataclass(frozen=True)
class FixedWidthConfig:
    """Fixed-width model: k distinct variables per clause, random signs."""

    n: int
    m: int
    k: int
    seed: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if not (1 <= self.k <= self.n):
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")


def gen_indep(cfg: IndepModelConfig) -> Formula:
    """Draw a formula from the independent-literal model.

    Draw order is fixed (clause by clause, variable 1..n, positive draw
    before negative draw) so a seed pins the exact formula.
    """
    if cfg.reject_empty and cfg.m > 0:
        if cfg.n == 0 or (cfg.p1 == 0.0 and cfg.p2 == 0.0):
            raise ValueError("every clause would be empty; cannot reject")
    rng = random.Random(cfg.seed)
    clauses = []
    for _ in range(cfg.m):
        while True:
            lits = []
            for v in range(1, cfg.n + 1):
                if rng.random() < cfg.p1:
                    lits.append(v)
                if rng.random() < cfg.p2:
                    lits.append(-v)
            if lits or not cfg.reject_empty:
                break
        clauses.append(frozenset(lits))
    return Formula(tuple(clauses), cfg.n)


def gen_kcnf(cfg: FixedWidthConfig) -> Formula:
    """Draw a formula of m clauses, each k distinct uniform variables,
    each negated independently with probability 1/2.  Duplicate clauses
    across the formula can occur; tautologies cannot (variables within
    a clause are distinct)."""
    rng = random.Random(cfg.seed)
    clauses = []
    for _ in range(cfg.m):
        chosen = rng.sample(range(1, cfg.n + 1), cfg.k)
        clauses.append(frozenset(-v if rng.random() < 0.5 else v for v in chosen))
    return Formula(tuple(clauses), cfg.n)


def instance_filename(model: str, n: int, m: int, seed: int) -> str:
    """Canonical file name for a generated instance."""
    return f"{model}_n{n}_m{m}_s{seed}.cnf"
