"""Command-line front end.

Exit codes: 0 on success, 1 for usage or input parse errors, 2 for
runtime failures (inconsistent knowledge base, oracle disagreement).
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .bench import GridSpec, run_grid, summarize, write_records_csv, write_summary_csv
from .counting import (
    EngineConfig,
    InconsistentKBError,
    count_models,
    count_models_dnf,
    degree_of_belief,
)
from .formula import Formula, ParseError, emit_dimacs, parse_dimacs
from .generators import FixedWidthConfig, IndepModelConfig, gen_indep, gen_kcnf, instance_filename
from .oracle import OracleLimitError, brute_force_count

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _engine_flags(sub):
    sub.add_argument("--fallback-threshold", type=int, default=6, metavar="N")
    sub.add_argument(
        "--heuristic",
        choices=["max-occ-minmax", "max-occ", "first"],
        default="max-occ-minmax",
    )
    sub.add_argument("--no-unit-rule", action="store_true")
    sub.add_argument("--no-fallback", action="store_true")


def _engine_config(args) -> EngineConfig:
    return EngineConfig(
        fallback_threshold=args.fallback_threshold,
        heuristic=args.heuristic,
        fallback_enabled=not args.no_fallback,
        unit_rule=not args.no_unit_rule,
    )


def _load(path: str, want_syntax: str) -> Formula:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    formula = parse_dimacs(text)
    if formula.syntax != want_syntax:
        raise UsageError(f"{path}: expected a {want_syntax} file, got {formula.syntax}")
    return formula


def _print_stats(stats) -> None:
    print(f"recursive_calls={stats.recursive_calls}")
    print(f"splits={stats.splits}")
    print(f"unit_propagations={stats.unit_propagations}")
    print(f"fallback_invocations={stats.fallback_invocations}")
    print(f"peak_stored_clauses={stats.peak_stored_clauses}")
    print(f"peak_depth={stats.peak_depth}")


def _cmd_count(args) -> int:
    formula = _load(args.file, "cnf")
    result = count_models(formula, config=_engine_config(args))
    print(result.count)
    if args.stats:
        _print_stats(result.stats)
    return EXIT_OK


def _cmd_count_dnf(args) -> int:
    formula = _load(args.file, "dnf")
    result = count_models_dnf(formula, config=_engine_config(args))
    print(result.count)
    if args.stats:
        _print_stats(result.stats)
    return EXIT_OK


def _cmd_gen(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    for i in range(args.count):
        seed = args.seed + i
        try:
            if args.model == "indep":
                if args.p1 is None or args.p2 is None:
                    raise UsageError("indep model needs --p1 and --p2")
                cfg = IndepModelConfig(
                    n=args.n,
                    m=args.m,
                    p1=args.p1,
                    p2=args.p2,
                    seed=seed,
                    reject_empty=args.reject_empty,
                )
                formula = gen_indep(cfg)
            else:
                if args.k is None:
                    raise UsageError("kcnf model needs --k")
                formula = gen_kcnf(FixedWidthConfig(n=args.n, m=args.m, k=args.k, seed=seed))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        path = out_dir / instance_filename(args.model, args.n, args.m, seed)
        path.write_text(emit_dimacs(formula))
        print(path)
    return EXIT_OK


def _parse_ratios(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--ratios wants lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--ratios wants numbers, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise UsageError("--ratios needs step > 0 and hi >= lo")
    count = int(round((hi - lo) / step)) + 1
    values = tuple(round(lo + i * step, 10) for i in range(count))
    return tuple(v for v in values if v <= hi + 1e-9)


def _cmd_bench(args) -> int:
    if bool(args.m) == bool(args.ratios):
        raise UsageError("give exactly one of --m or --ratios")
    try:
        spec = GridSpec(
            model=args.model,
            n_values=tuple(args.n),
            m_values=tuple(args.m) if args.m else None,
            ratios=_parse_ratios(args.ratios) if args.ratios else None,
            p1=args.p1,
            p2=args.p2,
            k=args.k,
            instances=args.instances,
            base_seed=args.seed,
            engine=_engine_config(args),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = list(run_grid(spec, jobs=args.jobs))
    with open(args.records, "w", newline="") as fh:
        write_records_csv(records, fh)
    with open(args.summary, "w", newline="") as fh:
        write_summary_csv(summarize(records), fh)
    print(args.records)
    print(args.summary)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    if args.n_max > 16:
        raise UsageError("--n-max is capped at 16")
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    if args.cases < 1:
        raise UsageError("--cases must be >= 1")
    rng = random.Random(args.seed)
    for case in range(args.cases):
        if case % 2 == 0:
            n = rng.randint(1, args.n_max)
            m = rng.randint(0, 30)
            p1 = rng.choice([0.1, 0.2, 0.3])
            p2 = rng.choice([0.1, 0.2, 0.3])
            formula = gen_indep(
                IndepModelConfig(n=n, m=m, p1=p1, p2=p2, seed=rng.getrandbits(32))
            )
        else:
            n = rng.randint(3, max(3, args.n_max))
            k = rng.choice([2, 3])
            m = rng.randint(0, 4 * n)
            formula = gen_kcnf(
                FixedWidthConfig(n=n, m=m, k=k, seed=rng.getrandbits(32))
            )
        expected = brute_force_count(formula)
        got = count_models(formula).count
        if got != expected:
            print(
                f"mismatch on case {case}: counter={got} brute-force={expected}",
                file=sys.stderr,
            )
            sys.stderr.write(emit_dimacs(formula))
            return EXIT_RUNTIME
    print(f"{args.cases}/{args.cases} ok")
    return EXIT_OK


def _cmd_belief(args) -> int:
    kb = _load(args.kb, "cnf")
    statement = _load(args.s, "cnf")
    if kb.num_vars != statement.num_vars:
        raise UsageError(
            f"num_vars mismatch: {args.kb} has {kb.num_vars}, "
            f"{args.s} has {statement.num_vars}"
        )
    value = degree_of_belief(kb, statement)
    print(f"{value.numerator}/{value.denominator} {float(value):.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dpcount", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("count", help="count models of a DIMACS CNF file")
    p.add_argument("file")
    _engine_flags(p)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = subs.add_parser("count-dnf", help="count models of a DIMACS DNF file")
    p.add_argument("file")
    _engine_flags(p)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_count_dnf)

    p = subs.add_parser("gen", help="write random DIMACS instances")
    p.add_argument("--model", choices=["indep", "kcnf"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, metavar="N")
    p.add_argument("--out", default=".")
    p.add_argument("--reject-empty", action="store_true")
    p.set_defaults(func=_cmd_gen)

    p = subs.add_parser("bench", help="run a parameter grid, write CSVs")
    p.add_argument("--model", choices=["indep", "kcnf"], required=True)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--ratios", metavar="LO:HI:STEP")
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--records", default="records.csv")
    p.add_argument("--summary", default="summary.csv")
    _engine_flags(p)
    p.set_defaults(func=_cmd_bench)

    p = subs.add_parser("oracle-check", help="cross-check counter vs brute force")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)

    p = subs.add_parser("belief", help="degree of belief mu(KB+s)/mu(KB)")
    p.add_argument("--kb", required=True)
    p.add_argument("--s", required=True)
    p.set_defaults(func=_cmd_belief)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistentKBError, OracleLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())
