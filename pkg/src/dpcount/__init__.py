"""Exact model counting for propositional CNF and DNF formulas."""

from .bench import (
    GridSpec,
    MemoryFit,
    RunRecord,
    SummaryRow,
    fit_memory_exponent,
    run_grid,
    summarize,
    write_records_csv,
    write_summary_csv,
)
from .counting import (
    DEFAULT_CONFIG,
    CountResult,
    CountStats,
    EngineConfig,
    InconsistentKBError,
    choose_split_variable,
    count_models,
    count_models_dnf,
    count_small_ie,
    degree_of_belief,
    falsifying_count,
)
from .formula import (
    DimacsWarning,
    Formula,
    ParseError,
    assign,
    complement,
    emit_dimacs,
    find_unit,
    is_tautology,
    negate,
    occurrence_counts,
    occurring_variables,
    parse_dimacs,
)
from .generators import (
    FixedWidthConfig,
    IndepModelConfig,
    gen_indep,
    gen_kcnf,
    instance_filename,
)
from .oracle import OracleLimitError, brute_force_count, brute_force_count_dnf

__version__ = "0.1.0"

__all__ = [
    "CountResult",
    "CountStats",
    "DEFAULT_CONFIG",
    "DimacsWarning",
    "EngineConfig",
    "FixedWidthConfig",
    "Formula",
    "GridSpec",
    "IndepModelConfig",
    "InconsistentKBError",
    "MemoryFit",
    "OracleLimitError",
    "ParseError",
    "RunRecord",
    "SummaryRow",
    "assign",
    "brute_force_count",
    "brute_force_count_dnf",
    "choose_split_variable",
    "complement",
    "count_models",
    "count_models_dnf",
    "count_small_ie",
    "degree_of_belief",
    "emit_dimacs",
    "falsifying_count",
    "find_unit",
    "fit_memory_exponent",
    "gen_indep",
    "gen_kcnf",
    "instance_filename",
    "is_tautology",
    "negate",
    "occurrence_counts",
    "occurring_variables",
    "parse_dimacs",
    "run_grid",
    "summarize",
    "write_records_csv",
    "write_summary_csv",
]
