"""Batch experiment runner: parameter grids, per-instance records,
summary statistics, and the stored-clause growth fit.

A grid is the cartesian product of n values and clause counts (given
directly or as clause-to-variable ratios).  Every cell runs a fixed
number of instances; instance i of the whole grid uses seed
base_seed + i, so the record set is a pure function of the spec and can
be reproduced cell by cell, serially or in parallel.  Wall times are
reported but obviously not reproducible.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Optional, Sequence

import numpy as np

from .counting import DEFAULT_CONFIG, EngineConfig, count_models
from .generators import FixedWidthConfig, IndepModelConfig, gen_indep, gen_kcnf

RECORD_FIELDS = (
    "model,n,m,p1,p2,k,instance,seed,count,"
    "recursive_calls,peak_stored_clauses,time_ms"
)
SUMMARY_FIELDS = (
    "model,n,m,p1,p2,k,instances,mean_calls,median_calls,stddev_calls,"
    "mean_peakM,max_peakM,mean_time_ms"
)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class GridSpec:
    """One benchmark grid.  Exactly one of m_values / ratios is given;
    ratios translate to m = round(ratio * n) per cell."""

    model: str  # "indep" or "kcnf"
    n_values: tuple[int, ...]
    m_values: Optional[tuple[int, ...]] = None
    ratios: Optional[tuple[float, ...]] = None
    p1: Optional[float] = None
    p2: Optional[float] = None
    k: Optional[int] = None
    instances: int = 100
    base_seed: int = 0
    engine: EngineConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.model not in ("indep", "kcnf"):
            raise ValueError(f"unknown model {self.model!r}")
        if not self.n_values:
            raise ValueError("empty grid: no n values")
        if bool(self.m_values) == bool(self.ratios):
            raise ValueError("give exactly one of m_values or ratios")
        if self.instances < 1:
            raise ValueError("instances must be >= 1")
        if self.model == "indep" and (self.p1 is None or self.p2 is None):
            raise ValueError("indep model needs p1 and p2")
        if self.model == "kcnf" and self.k is None:
            raise ValueError("kcnf model needs k")

    def cells(self) -> list[tuple[int, int]]:
        """(n, m) pairs in grid order."""
        out = []
        for n in self.n_values:
            if self.m_values:
                for m in self.m_values:
                    out.append((n, m))
            else:
                for r in self.ratios:
                    out.append((n, _round_half_up(r * n)))
        return out


@dataclass
class RunRecord:
    model: str
    n: int
    m: int
    p1: Optional[float]
    p2: Optional[float]
    k: Optional[int]
    instance: int
    seed: int
    count: int
    recursive_calls: int
    peak_stored_clauses: int
    time_ms: float


@dataclass
class SummaryRow:
    model: str
    n: int
    m: int
    p1: Optional[float]
    p2: Optional[float]
    k: Optional[int]
    instances: int
    mean_calls: float
    median_calls: float
    stddev_calls: float
    mean_peak: float
    max_peak: int
    mean_time_ms: float


def _run_instance(task) -> RunRecord:
    model, n, m, p1, p2, k, instance, seed, engine = task
    if model == "indep":
        formula = gen_indep(IndepModelConfig(n=n, m=m, p1=p1, p2=p2, seed=seed))
    else:
        formula = gen_kcnf(FixedWidthConfig(n=n, m=m, k=k, seed=seed))
    start = time.perf_counter()
    result = count_models(formula, n, engine)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return RunRecord(
        model=model,
        n=n,
        m=m,
        p1=p1,
        p2=p2,
        k=k,
        instance=instance,
        seed=seed,
        count=result.count,
        recursive_calls=result.stats.recursive_calls,
        peak_stored_clauses=result.stats.peak_stored_clauses,
        time_ms=elapsed_ms,
    )


def _tasks(spec: GridSpec) -> list[tuple]:
    tasks = []
    index = 0
    for n, m in spec.cells():
        for instance in range(spec.instances):
            tasks.append(
                (
                    spec.model,
                    n,
                    m,
                    spec.p1,
                    spec.p2,
                    spec.k,
                    instance,
                    spec.base_seed + index,
                    spec.engine,
                )
            )
            index += 1
    return tasks


def run_grid(spec: GridSpec, jobs: int = 1) -> Iterator[RunRecord]:
    """Yield one RunRecord per (cell, instance), in grid order.

    With jobs > 1 instances run in a process pool; the record stream is
    identical to the serial one (up to time_ms) because every instance
    owns its seed.
    """
    tasks = _tasks(spec)
    if jobs <= 1:
        for task in tasks:
            yield _run_instance(task)
    else:
        chunk = max(1, len(tasks) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(_run_instance, tasks, chunksize=chunk)


def _median(values: Sequence[float]) -> float:
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return float(ordered[mid])
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def _stddev(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / (len(values) - 1))


def summarize(records: Iterable[RunRecord]) -> list[SummaryRow]:
    """Group records by cell and reduce to mean/median/sample stddev.

    Median of an even count is the mean of the two middle order
    statistics; stddev divides by count - 1 (0.0 for a single record).
    """
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        key = (rec.model, rec.n, rec.m, rec.p1, rec.p2, rec.k)
        groups.setdefault(key, []).append(rec)
    if not groups:
        raise ValueError("no records to summarize")
    rows = []
    for (model, n, m, p1, p2, k), group in groups.items():
        calls = [r.recursive_calls for r in group]
        peaks = [r.peak_stored_clauses for r in group]
        times = [r.time_ms for r in group]
        rows.append(
            SummaryRow(
                model=model,
                n=n,
                m=m,
                p1=p1,
                p2=p2,
                k=k,
                instances=len(group),
                mean_calls=sum(calls) / len(calls),
                median_calls=_median(calls),
                stddev_calls=_stddev(calls),
                mean_peak=sum(peaks) / len(peaks),
                max_peak=max(peaks),
                mean_time_ms=sum(times) / len(times),
            )
        )
    return rows


def _opt(value) -> str:
    return "" if value is None else str(value)


def write_records_csv(records: Iterable[RunRecord], stream: IO[str]) -> int:
    """Write the per-instance CSV; counts go out as decimal strings."""
    writer = csv.writer(stream)
    writer.writerow(RECORD_FIELDS.split(","))
    written = 0
    for r in records:
        writer.writerow(
            [
                r.model,
                r.n,
                r.m,
                _opt(r.p1),
                _opt(r.p2),
                _opt(r.k),
                r.instance,
                r.seed,
                str(r.count),
                r.recursive_calls,
                r.peak_stored_clauses,
                f"{r.time_ms:.3f}",
            ]
        )
        written += 1
    return written


def write_summary_csv(rows: Iterable[SummaryRow], stream: IO[str]) -> int:
    writer = csv.writer(stream)
    writer.writerow(SUMMARY_FIELDS.split(","))
    written = 0
    for row in rows:
        writer.writerow(
            [
                row.model,
                row.n,
                row.m,
                _opt(row.p1),
                _opt(row.p2),
                _opt(row.k),
                row.instances,
                f"{row.mean_calls:.6g}",
                f"{row.median_calls:.6g}",
                f"{row.stddev_calls:.6g}",
                f"{row.mean_peak:.6g}",
                row.max_peak,
                f"{row.mean_time_ms:.3f}",
            ]
        )
        written += 1
    return written


@dataclass(frozen=True)
class MemoryFit:
    """Least-squares power law M ~= s * m**t, fitted in log space."""

    s: float
    t: float
    residual: float


def fit_memory_exponent(points: Sequence[tuple[float, float]]) -> MemoryFit:
    """Fit log M = log s + t log m; residual is the RMS in log space.

    Needs at least 3 distinct m values and strictly positive data.
    """
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    ms = [float(m) for m, _ in points]
    peaks = [float(p) for _, p in points]
    if len(set(ms)) < 3:
        raise ValueError("need at least 3 distinct m values")
    if any(m <= 0 for m in ms) or any(p <= 0 for p in peaks):
        raise ValueError("m and M must be positive")
    x = np.log(ms)
    y = np.log(peaks)
    t, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((intercept + t * x - y) ** 2)))
    return MemoryFit(s=float(np.exp(intercept)), t=float(t), residual=residual)
