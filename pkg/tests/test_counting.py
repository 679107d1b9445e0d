import random
from fractions import Fraction

import pytest

from dpcount import (
    EngineConfig,
    Formula,
    InconsistentKBError,
    assign,
    choose_split_variable,
    count_models,
    count_models_dnf,
    count_small_ie,
    degree_of_belief,
    falsifying_count,
    occurrence_counts,
    occurring_variables,
)
from dpcount.counting import _choose_packed, _even_mask, _pack
from helpers import cnf, naive_count, naive_count_dnf, random_formula

ALL_CONFIGS = [
    EngineConfig(heuristic=h, fallback_enabled=fb, unit_rule=ur)
    for h in ("max-occ-minmax", "max-occ", "first")
    for fb in (True, False)
    for ur in (True, False)
]


class TestCountModels:
    def test_empty_formula(self):
        assert count_models(cnf([], 3)).count == 8

    def test_empty_clause(self):
        assert count_models(cnf([[]], 5)).count == 0

    def test_two_clause_example(self):
        f = cnf([[1, 2], [-1, 3]], 3)
        assert naive_count(f) == 4  # ground truth computed the dumb way
        assert count_models(f).count == 4

    def test_single_clause(self):
        # one k-literal clause excludes exactly 2**(n-k) assignments
        assert count_models(cnf([[1, -2]], 2)).count == 3

    def test_recursive_calls_at_least_one(self):
        assert count_models(cnf([], 0)).stats.recursive_calls == 1

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            count_models(cnf([[1, 2], [3]], 3), n=2)
        with pytest.raises(ValueError):
            count_models(cnf([], 1), n=-1)

    def test_free_variables_double(self):
        f = cnf([[1, 2], [-2, 3]], 3)
        base = count_models(f, 3).count
        assert count_models(f, 4).count == 2 * base
        assert count_models(f, 10).count == base << 7

    def test_oracle_equivalence_all_configs(self):
        rng = random.Random(101)
        for _ in range(150):
            f = random_formula(rng, n_max=9, m_max=25)
            expected = naive_count(f)
            for config in ALL_CONFIGS:
                assert count_models(f, config=config).count == expected

    def test_unit_rule_soundness(self):
        rng = random.Random(103)
        checked = 0
        while checked < 50:
            f = random_formula(rng, n_max=8, m_max=12)
            lit = next((next(iter(c)) for c in f.clauses if len(c) == 1), None)
            if lit is None:
                continue
            checked += 1
            n = f.num_vars
            assert (
                count_models(f, n).count == count_models(assign(f, lit), n - 1).count
            )

    def test_split_decomposition(self):
        rng = random.Random(107)
        for _ in range(60):
            f = random_formula(rng, n_max=8, m_max=15)
            n = f.num_vars
            total = count_models(f, n).count
            for var in sorted(occurring_variables(f)):
                left = count_models(assign(f, var), n - 1).count
                right = count_models(assign(f, -var), n - 1).count
                assert total == left + right

    def test_split_decomposition_vanished_variable_form(self):
        # Equivalent accounting: count branch models over the variables
        # still occurring and pay 2**vanished for the ones that dropped
        # out alongside the split variable.
        rng = random.Random(109)
        for _ in range(40):
            f = random_formula(rng, n_max=7, m_max=10)
            n = f.num_vars
            live = occurring_variables(f)
            total = count_models(f, n).count
            for var in sorted(live):
                parts = []
                for branch in (assign(f, var), assign(f, -var)):
                    remaining = occurring_variables(branch)
                    vanished = len(live - remaining) - 1  # besides var itself
                    inner = count_models(branch, n - 1 - vanished).count
                    parts.append((1 << vanished) * inner)
                assert total == parts[0] + parts[1]

    def test_duplicate_clause_insensitive(self):
        rng = random.Random(113)
        for _ in range(50):
            f = random_formula(rng, n_max=8, m_max=10)
            if not f.clauses:
                continue
            dup = Formula(f.clauses + (f.clauses[0],), f.num_vars)
            assert count_models(dup).count == count_models(f).count

    def test_tautology_insensitive(self):
        rng = random.Random(127)
        for _ in range(50):
            f = random_formula(rng, n_max=8, m_max=10)
            taut = Formula(f.clauses + (frozenset({1, -1}),), f.num_vars)
            assert count_models(taut).count == count_models(f).count

    def test_range_and_saturation(self):
        rng = random.Random(131)
        for _ in range(100):
            f = random_formula(rng, n_max=8, m_max=10)
            n = f.num_vars
            count = count_models(f, n).count
            assert 0 <= count <= 1 << n
            all_trivial = all(len(c) == 0 or any(-l in c for l in c) for c in f.clauses)
            # 2**n exactly when every clause is tautological (or none exist)
            empty_free = all(len(c) > 0 for c in f.clauses)
            assert (count == 1 << n) == (all_trivial and empty_free) or not f.clauses

    def test_stats_deterministic(self):
        rng = random.Random(137)
        for _ in range(20):
            f = random_formula(rng, n_max=9, m_max=20)
            a = count_models(f)
            b = count_models(f)
            assert a.count == b.count and a.stats == b.stats

    def test_memory_bound(self):
        rng = random.Random(139)
        for _ in range(200):
            f = random_formula(rng, n_max=10, m_max=30)
            stats = count_models(f).stats
            if f.num_vars >= 1:
                assert stats.peak_stored_clauses <= len(f) * f.num_vars

    def test_fallback_counts_one_call(self):
        f = cnf([[1, 2], [-1, 3]], 3)  # m=2 < threshold, no empty clause
        stats = count_models(f).stats
        assert stats.recursive_calls == 1
        assert stats.fallback_invocations == 1
        assert stats.splits == 0

    def test_unit_propagation_stats(self):
        f = cnf([[1], [-1, 2], [2, 3]], 3)
        stats = count_models(f, config=EngineConfig(fallback_enabled=False)).stats
        assert stats.unit_propagations >= 1

    def test_config_validation(self):
        with pytest.raises(ValueError):
            EngineConfig(fallback_threshold=-1)
        with pytest.raises(ValueError):
            EngineConfig(heuristic="nope")


class TestChooseSplitVariable:
    def test_max_occurrence_wins(self):
        f = cnf([[1, 2], [-1, 3], [-1, -2]], 3)
        assert choose_split_variable(f) == 1  # occurrences 3 vs 2 vs 1

    def test_minmax_tiebreak(self):
        f = cnf([[1, 2], [1, 3], [-2, 3]], 3)
        # totals all 2; min(pos, neg): x2 = 1, x1 = 0, x3 = 0
        assert choose_split_variable(f) == 2

    def test_full_tie_smallest_index(self):
        f = cnf([[1, 2], [-1, -2]], 2)
        assert choose_split_variable(f) == 1

    def test_max_occ_only_ignores_minmax(self):
        f = cnf([[1, 2], [1, 3], [-2, 3]], 3)
        assert choose_split_variable(f, "max-occ") == 1

    def test_first_variable(self):
        f = cnf([[3, 4], [-2, 3]], 4)
        assert choose_split_variable(f, "first") == 2

    def test_no_occurring_variable(self):
        with pytest.raises(ValueError):
            choose_split_variable(cnf([], 2))
        with pytest.raises(ValueError):
            choose_split_variable(cnf([[]], 2))

    def test_clause_order_invariance(self):
        rng = random.Random(149)
        for _ in range(100):
            f = random_formula(rng, n_max=8, m_max=12)
            if not occurrence_counts(f):
                continue
            clauses = list(f.clauses)
            rng.shuffle(clauses)
            g = Formula(tuple(clauses), f.num_vars)
            for heuristic in ("max-occ-minmax", "max-occ", "first"):
                assert choose_split_variable(f, heuristic) == choose_split_variable(
                    g, heuristic
                )

    def test_packed_matches_public(self):
        rng = random.Random(151)
        for _ in range(300):
            f = random_formula(rng, n_max=9, m_max=15)
            if not occurrence_counts(f):
                continue
            even = _even_mask(f.num_vars)
            packed = [c for c in _pack(f) if True]
            for heuristic in ("max-occ-minmax", "max-occ", "first"):
                bit = _choose_packed(packed, heuristic, even)
                var = bit.bit_length() // 2 + 1
                assert var == choose_split_variable(f, heuristic)


class TestFalsifyingCount:
    def test_single_clause(self):
        assert falsifying_count([frozenset({1, 2})], 3) == 2

    def test_conflict(self):
        assert falsifying_count([frozenset({1}), frozenset({-1})], 1) == 0

    def test_shared_variables(self):
        s = [frozenset({1, 2}), frozenset({2, -3})]
        assert falsifying_count(s, 4) == 2  # x1=F, x2=F, x3=T; x4 free


class TestCountSmallIE:
    def test_empty(self):
        assert count_small_ie(cnf([], 2)) == 4

    def test_complementary_units(self):
        assert count_small_ie(cnf([[1], [-1]], 1)) == 0

    def test_example(self):
        f = cnf([[1, 2], [-1, 3]], 3)
        assert naive_count(f) == 4
        assert count_small_ie(f) == 4

    def test_duplicates_and_tautologies(self):
        f = cnf([[1, 2], [1, 2], [1, -1]], 2)
        assert count_small_ie(f) == naive_count(f) == 3

    def test_empty_clause(self):
        assert count_small_ie(cnf([[], [1]], 2)) == 0

    def test_agrees_with_engine_and_naive(self):
        rng = random.Random(157)
        for _ in range(200):
            f = random_formula(rng, n_max=10, m_max=8)
            expected = naive_count(f)
            assert count_small_ie(f) == expected
            assert count_models(f).count == expected


class TestCountModelsDnf:
    def test_one_term(self):
        f = Formula((frozenset({1, 2}),), 3, syntax="dnf")
        assert count_models_dnf(f).count == 2

    def test_no_terms(self):
        f = Formula((), 4, syntax="dnf")
        assert count_models_dnf(f).count == 0

    def test_covering_terms(self):
        f = Formula((frozenset({1}), frozenset({-1})), 2, syntax="dnf")
        assert count_models_dnf(f).count == 4

    def test_against_naive(self):
        rng = random.Random(163)
        for _ in range(100):
            base = random_formula(rng, n_max=8, m_max=10)
            f = Formula(base.clauses, base.num_vars, syntax="dnf")
            assert count_models_dnf(f).count == naive_count_dnf(f)


class TestDegreeOfBelief:
    def test_example(self):
        kb = cnf([[1, 2]], 2)
        s = cnf([[1]], 2)
        assert naive_count(kb) == 3 and naive_count(cnf([[1, 2], [1]], 2)) == 2
        assert degree_of_belief(kb, s) == Fraction(2, 3)

    def test_symmetry(self):
        assert degree_of_belief(cnf([], 1), cnf([[1]], 1)) == Fraction(1, 2)

    def test_entailed(self):
        assert degree_of_belief(cnf([[1]], 1), cnf([[1]], 1)) == 1

    def test_inconsistent_kb(self):
        with pytest.raises(InconsistentKBError):
            degree_of_belief(cnf([[1], [-1]], 1), cnf([[1]], 1))

    def test_num_vars_mismatch(self):
        with pytest.raises(ValueError):
            degree_of_belief(cnf([], 2), cnf([], 3))

    def test_range(self):
        rng = random.Random(167)
        for _ in range(50):
            kb = random_formula(rng, n_max=7, m_max=6)
            s = random_formula(rng, n_max=7, m_max=3)
            s = Formula(s.clauses, kb.num_vars) if all(
                abs(l) <= kb.num_vars for c in s.clauses for l in c
            ) else None
            if s is None:
                continue
            try:
                value = degree_of_belief(kb, s)
            except InconsistentKBError:
                continue
            assert 0 <= value <= 1
