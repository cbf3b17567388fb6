"""Timing harness comparing the congruence tests with the baselines."""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial
from typing import Sequence

from . import oracle
from .congruence import Method, run_test
from .errors import DomainError
from .records import FORMATS


@dataclass(frozen=True)
class BenchRecord:
    method: str
    n: int
    m: int | None
    elapsed_ns: int  # median over repeats
    verdict: bool
    agreed_with_oracle: bool

    def row(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BenchConfig:
    n_range: tuple[int, int]
    methods: tuple[Method, ...] = (Method.VANTIEGHEM, Method.TRIAL)
    base: int = 2
    repeats: int = 5
    warmup: int = 1
    jobs: int = 1
    output_format: str = "json"

    def __post_init__(self) -> None:
        methods = tuple(sorted({Method(m) for m in self.methods}, key=list(Method).index))
        object.__setattr__(self, "methods", methods)
        lo, hi = self.n_range
        if not methods:
            raise DomainError("at least one method is required")
        floor = max(m.min_n for m in methods)
        if lo < floor or hi < lo:
            raise DomainError(f"bench range must satisfy {floor} <= lo <= hi, got {lo}:{hi}")
        if self.base < 2:
            raise DomainError(f"base must be >= 2, got {self.base}")
        if self.repeats < 1 or self.warmup < 0:
            raise DomainError("repeats must be >= 1 and warmup >= 0")
        if self.jobs < 1:
            raise DomainError(f"jobs must be >= 1, got {self.jobs}")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown output format {self.output_format!r}")


def time_cell(method: Method, n: int, m: int | None, repeats: int, warmup: int) -> tuple[int, bool]:
    """Median wall time in ns of ``repeats`` calls, after ``warmup`` untimed calls."""
    for _ in range(warmup):
        run_test(method, n, m)
    samples = []
    verdict = False
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        verdict = run_test(method, n, m).verdict
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples)), verdict


def _bench_n(n: int, config: BenchConfig) -> list[BenchRecord]:
    truth = oracle.trial_division(n)
    out = []
    for method in config.methods:
        m = config.base if method.uses_base else None
        elapsed, verdict = time_cell(method, n, m, config.repeats, config.warmup)
        out.append(BenchRecord(method.value, n, m, elapsed, verdict, verdict == truth))
    return out


def run_bench(config: BenchConfig) -> list[BenchRecord]:
    """One record per (n, method), in ascending n then method order."""
    ns = range(config.n_range[0], config.n_range[1] + 1)
    work = partial(_bench_n, config=config)
    if config.jobs == 1:
        chunks = map(work, ns)
        return [r for chunk in chunks for r in chunk]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return [r for chunk in pool.map(work, ns, chunksize=8) for r in chunk]


@dataclass(frozen=True)
class BenchBucket:
    lo: int
    hi: int
    method: str
    cells: int
    median_ns: int


def aggregate(records: Sequence[BenchRecord], buckets: int = 5) -> list[BenchBucket]:
    """Median of per-n medians over equal-width n buckets, per method."""
    if not records:
        return []
    lo = min(r.n for r in records)
    hi = max(r.n for r in records)
    width = max(1, -(-(hi - lo + 1) // buckets))
    groups: dict[tuple[int, str], list[int]] = {}
    for r in records:
        groups.setdefault(((r.n - lo) // width, r.method), []).append(r.elapsed_ns)
    order = {m.value: i for i, m in enumerate(Method)}
    out = []
    for (k, method), times in sorted(groups.items(), key=lambda kv: (kv[0][0], order[kv[0][1]])):
        b_lo = lo + k * width
        out.append(
            BenchBucket(b_lo, min(hi, b_lo + width - 1), method, len(times), int(statistics.median(times)))
        )
    return out


def slower_than(records: Sequence[BenchRecord], slow: str, fast: str) -> dict[int, bool]:
    """For each n timed under both methods, whether ``slow`` took longer than ``fast``."""
    by_key = {(r.method, r.n): r.elapsed_ns for r in records}
    return {
        n: by_key[(slow, n)] > by_key[(fast, n)]
        for (method, n) in by_key
        if method == slow and (fast, n) in by_key
    }
