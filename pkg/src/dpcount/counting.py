"""Exact model counting by Davis-Putnam splitting.

The counter is the classic recursive scheme: an empty formula over a
budget of n free variables has 2**n models, a formula containing an
empty clause has none, a unit clause forces its literal, and otherwise
the count splits over the two values of a branching variable chosen by
an occurrence heuristic.  The two branches partition the models, so the
branch counts add exactly.  Small residual formulas (fewer clauses than
a configurable threshold, 6 by default) are counted directly by
inclusion-exclusion over sets of falsified clauses, which beats
splitting them literal by literal.

The pure-literal shortcut familiar from satisfiability checking is
deliberately absent: it discards one branch, and for counting both
branches carry models, so the shortcut saves nothing and tends to pick
bad split variables.

Counts are plain Python ints and never overflow.  Internally clauses
are packed into single ints, two bits per variable (bit 2*(v-1) for v,
bit 2*(v-1)+1 for -v), so the hot loop runs on machine-level bit ops;
the public operations in :mod:`dpcount.formula` stay set-based and are
used by the test suite to cross-check the packed path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .formula import Formula, occurring_variables

HEURISTICS = ("max-occ-minmax", "max-occ", "first")


class InconsistentKBError(Exception):
    """The knowledge base has no models, so no belief is defined."""


@dataclass(frozen=True)
class EngineConfig:
    """Tuning knobs for the counter.

    fallback_threshold: clause counts below this switch to the
        inclusion-exclusion counter (0 never switches).
    heuristic: split-variable rule; "max-occ-minmax" maximizes total
        occurrences pos(x)+neg(x) and breaks ties by maximizing
        min(pos(x), neg(x)); "max-occ" skips the tie-break; "first"
        takes the smallest occurring variable index.  All remaining
        ties go to the smallest variable index.
    fallback_enabled: disable to split all the way down.
    unit_rule: disable to handle unit clauses by ordinary splitting
        (one branch then dies on the empty clause).
    """

    fallback_threshold: int = 6
    heuristic: str = "max-occ-minmax"
    fallback_enabled: bool = True
    unit_rule: bool = True

    def __post_init__(self):
        if self.fallback_threshold < 0:
            raise ValueError("fallback_threshold must be nonnegative")
        if self.heuristic not in HEURISTICS:
            raise ValueError(
                f"unknown heuristic {self.heuristic!r}; expected one of {HEURISTICS}"
            )


DEFAULT_CONFIG = EngineConfig()


@dataclass
class CountStats:
    """Instrumentation for one counting run.

    recursive_calls counts every entry into the recursion including the
    top-level call; a fallback delegation is the one call that entered
    the delegating frame (the subset enumeration inside it is not a
    recursion of the counter).  peak_stored_clauses is the maximum over
    time of the total clause count of all formulas live on the
    depth-first stack; for an input with m clauses over n >= 1 variables
    it is bounded by m*n because each split retires its input formula,
    leaves at most one pending sibling of at most m clauses per level,
    and consumes one variable per level.
    """

    recursive_calls: int = 0
    splits: int = 0
    unit_propagations: int = 0
    fallback_invocations: int = 0
    peak_stored_clauses: int = 0
    peak_depth: int = 0


@dataclass
class CountResult:
    count: int
    stats: CountStats


def _even_mask(num_vars: int) -> int:
    # 0b0101...01 over 2*num_vars bits: one low bit per variable pair
    return ((1 << (2 * num_vars)) - 1) // 3


def _pack_clause(clause: Iterable[int]) -> int:
    word = 0
    for lit in clause:
        if lit > 0:
            word |= 1 << (2 * (lit - 1))
        else:
            word |= 1 << (2 * (-lit - 1) + 1)
    return word


def _pack(formula: Formula) -> list[int]:
    return [_pack_clause(c) for c in formula.clauses]


def _ie_count(clauses: list[int], n: int, even: int) -> int:
    """Model count by inclusion-exclusion over falsified-clause sets.

    An assignment falsifies a set S of clauses iff every literal of
    every clause of S is false, which is impossible when the union of
    literals contains a complementary pair and otherwise leaves n - v
    variables free, v being the number of distinct variables in the
    union.  Summing over all subsets with alternating sign yields the
    count of assignments falsifying nothing.  Exponential in the number
    of distinct clauses; callers keep that small.

    Duplicate clauses are collapsed and tautologies dropped first; both
    leave every falsified-set union unchanged.
    """
    distinct: list[int] = []
    for c in clauses:
        if c & (c >> 1) & even:
            continue
        if c not in distinct:
            distinct.append(c)
    k = len(distinct)
    total = 1 << n
    # Depth-first over subsets in index order.  A subset whose literal
    # union conflicts contributes 0, and so does every superset, so the
    # whole branch is pruned.
    stack = [(0, 0, False)]
    while stack:
        start, union, plus = stack.pop()
        for i in range(start, k):
            u = union | distinct[i]
            if u & (u >> 1) & even:
                continue
            vars_in_union = ((u | (u >> 1)) & even).bit_count()
            if plus:
                total += 1 << (n - vars_in_union)
            else:
                total -= 1 << (n - vars_in_union)
            stack.append((i + 1, u, not plus))
    return total


def _choose_packed(clauses: list[int], heuristic: str, even: int) -> int:
    """Positive-polarity bit of the split variable."""
    if heuristic == "first":
        acc = 0
        for c in clauses:
            acc |= c
        low = acc & -acc
        return low if low & even else low >> 1

    occ: dict[int, int] = {}
    get = occ.get
    for c in clauses:
        while c:
            b = c & -c
            occ[b] = get(b, 0) + 1
            c ^= b
    minmax = heuristic == "max-occ-minmax"
    best_total = -1
    best_min = -1
    best_bit = 0
    for b, count in occ.items():
        if b & even:
            pos_bit = b
            pos = count
            neg = get(b << 1, 0)
        else:
            pos_bit = b >> 1
            if pos_bit in occ:
                continue  # pair already handled from the positive side
            pos = 0
            neg = count
        total = pos + neg
        if total < best_total:
            continue
        if total == best_total:
            if minmax:
                mn = pos if pos < neg else neg
                if mn < best_min or (mn == best_min and pos_bit > best_bit):
                    continue
            elif pos_bit > best_bit:
                continue
        best_total = total
        best_min = pos if pos < neg else neg
        best_bit = pos_bit
    return best_bit


def _count_packed(
    clauses: list[int], n: int, cfg: EngineConfig, even: int
) -> CountResult:
    total = 0
    calls = 0
    splits = 0
    units = 0
    fallbacks = 0
    live = len(clauses)
    peak = live
    peak_depth = 0
    threshold = cfg.fallback_threshold if cfg.fallback_enabled else 0
    use_unit = cfg.unit_rule
    heuristic = cfg.heuristic

    stack = [(clauses, n, 1)]
    while stack:
        f, n, depth = stack.pop()
        calls += 1
        while True:
            if depth > peak_depth:
                peak_depth = depth
            m = len(f)
            if m == 0:
                total += 1 << n
                break
            unit = 0
            has_empty = False
            for c in f:
                if c & (c - 1) == 0:
                    if c:
                        if not unit:
                            unit = c
                    else:
                        has_empty = True
                        break
            if has_empty:
                live -= m
                break
            if m < threshold:
                fallbacks += 1
                total += _ie_count(f, n, even)
                live -= m
                break
            if unit and use_unit:
                strip = ~((unit << 1) if unit & even else (unit >> 1))
                f = [c & strip for c in f if not c & unit]
                live += len(f) - m
                n -= 1
                depth += 1
                units += 1
                calls += 1
                continue
            pos_bit = _choose_packed(f, heuristic, even)
            neg_bit = pos_bit << 1
            strip_neg = ~neg_bit
            strip_pos = ~pos_bit
            f1 = [c & strip_neg for c in f if not c & pos_bit]
            f2 = [c & strip_pos for c in f if not c & neg_bit]
            splits += 1
            live += len(f1) + len(f2) - m
            if live > peak:
                peak = live
            n -= 1
            depth += 1
            stack.append((f2, n, depth))
            f = f1
            calls += 1

    stats = CountStats(
        recursive_calls=calls,
        splits=splits,
        unit_propagations=units,
        fallback_invocations=fallbacks,
        peak_stored_clauses=peak,
        peak_depth=peak_depth,
    )
    return CountResult(count=total, stats=stats)


def count_models(
    formula: Formula, n: Optional[int] = None, config: Optional[EngineConfig] = None
) -> CountResult:
    """Exact number of satisfying assignments of a CNF over n variables.

    ``n`` defaults to formula.num_vars and is the size of the variable
    universe; variables that never occur are free and double the count.
    Requires n >= the number of distinct occurring variables.  The
    result is exact for any n up to thousands of variables (the count
    is an arbitrary-precision int).
    """
    cfg = config if config is not None else DEFAULT_CONFIG
    if n is None:
        n = formula.num_vars
    if n < 0:
        raise ValueError("n must be nonnegative")
    occurring = occurring_variables(formula)
    if len(occurring) > n:
        raise ValueError(
            f"{len(occurring)} distinct variables occur but the budget is n={n}"
        )
    even = _even_mask(formula.num_vars)
    return _count_packed(_pack(formula), n, cfg, even)


def count_models_dnf(
    formula: Formula, n: Optional[int] = None, config: Optional[EngineConfig] = None
) -> CountResult:
    """Exact model count of a DNF formula (some term fully true).

    Counts the De Morgan dual: complementing every literal of every
    term yields the CNF of the negation, so the DNF count is 2**n minus
    the dual's count.  Stats are those of the inner CNF run.
    """
    from .formula import negate

    if n is None:
        n = formula.num_vars
    inner = count_models(negate(formula), n, config)
    return CountResult(count=(1 << n) - inner.count, stats=inner.stats)


def falsifying_count(clauses: Iterable[frozenset[int]], n: int) -> int:
    """Number of assignments falsifying every clause of the given set.

    Zero when the union of literals contains a complementary pair;
    otherwise every literal is forced false and the remaining
    n - (distinct variables) variables are free.
    """
    union: set[int] = set()
    for clause in clauses:
        for lit in clause:
            if -lit in union:
                return 0
            union.add(lit)
    return 1 << (n - len({abs(l) for l in union}))


def count_small_ie(formula: Formula, n: Optional[int] = None) -> int:
    """Model count by full inclusion-exclusion (see _ie_count).

    Correct for any clause count but exponential in it; the counting
    engine only delegates here below its fallback threshold.
    """
    if n is None:
        n = formula.num_vars
    if n < 0:
        raise ValueError("n must be nonnegative")
    occurring = occurring_variables(formula)
    if len(occurring) > n:
        raise ValueError(
            f"{len(occurring)} distinct variables occur but the budget is n={n}"
        )
    return _ie_count(_pack(formula), n, _even_mask(formula.num_vars))


def choose_split_variable(formula: Formula, heuristic: str = "max-occ-minmax") -> int:
    """Split variable per the configured heuristic (see EngineConfig).

    Depends only on the occurrence table, so permuting clauses never
    changes the choice.  Raises ValueError when no variable occurs.
    """
    from .formula import occurrence_counts

    if heuristic not in HEURISTICS:
        raise ValueError(f"unknown heuristic {heuristic!r}")
    table = occurrence_counts(formula)
    if not table:
        raise ValueError("no occurring variable to split on")
    if heuristic == "first":
        return min(table)
    if heuristic == "max-occ-minmax":
        key = lambda item: (item[1][0] + item[1][1], min(item[1]), -item[0])
    else:
        key = lambda item: (item[1][0] + item[1][1], -item[0])
    return max(table.items(), key=key)[0]


def degree_of_belief(
    kb: Formula, statement: Formula, config: Optional[EngineConfig] = None
) -> Fraction:
    """Conditional probability of a statement given a knowledge base.

    Both formulas must share num_vars.  Returns the exact rational
    mu(KB and s) / mu(KB), taking the conjunction as clause-multiset
    union.  Raises InconsistentKBError when the KB has no models.
    """
    if kb.num_vars != statement.num_vars:
        raise ValueError(
            f"num_vars mismatch: KB has {kb.num_vars}, statement has "
            f"{statement.num_vars}"
        )
    denominator = count_models(kb, config=config).count
    if denominator == 0:
        raise InconsistentKBError("knowledge base is unsatisfiable")
    joint = Formula(kb.clauses + statement.clauses, kb.num_vars)
    numerator = count_models(joint, config=config).count
    return Fraction(numerator, denominator)
