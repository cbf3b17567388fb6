"""Grid scans over (n, m, method) with oracle cross-checks and checkpointing.

Work is split by ``n`` across a process pool; results are consumed in
ascending ``n`` by the single writer, so report bytes never depend on the
worker count.  After every completed ``n`` the report is flushed and a
checkpoint ``{"config_hash": ..., "last_completed_n": ...}`` is replaced
atomically.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterator, Sequence, TextIO

from . import oracle
from .congruence import Method, TestReport, run_test
from .errors import CheckpointError, DomainError
from .records import FORMATS, SCAN_FIELDS, RecordWriter, parse_line, report_row

log = logging.getLogger(__name__)

Cell = tuple[int | None, Method]


@dataclass(frozen=True)
class ScanConfig:
    n_range: tuple[int, int]
    bases: tuple[int, ...] = (2,)
    methods: tuple[Method, ...] = (Method.VANTIEGHEM,)
    jobs: int = 1
    checkpoint_path: str | None = None
    output_format: str = "json"
    timings: bool = False

    def __post_init__(self) -> None:
        methods = tuple(sorted({Method(m) for m in self.methods}, key=list(Method).index))
        object.__setattr__(self, "methods", methods)
        object.__setattr__(self, "bases", tuple(sorted(set(self.bases))))
        lo, hi = self.n_range
        if not methods:
            raise DomainError("at least one method is required")
        floor = max(m.min_n for m in methods)
        if lo < floor:
            raise DomainError(
                f"range lower bound must be >= {floor} for methods "
                f"{', '.join(m.value for m in methods)}, got {lo}"
            )
        if hi < lo:
            raise DomainError(f"empty range {lo}:{hi}")
        if Method.VANTIEGHEM in methods and (not self.bases or min(self.bases) < 2):
            raise DomainError(f"vantieghem needs bases >= 2, got {list(self.bases)}")
        if Method.MILLER_RABIN in methods and hi >= 1 << 64:
            raise DomainError("miller_rabin is limited to n < 2**64")
        if self.jobs < 1:
            raise DomainError(f"jobs must be >= 1, got {self.jobs}")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown output format {self.output_format!r}")

    def cells(self) -> list[Cell]:
        """Per-n cells in (m, method) order, base-free methods first (m is null)."""
        out: list[Cell] = [(None, m) for m in self.methods if not m.uses_base]
        for base in self.bases:
            out += [(base, m) for m in self.methods if m.uses_base]
        return out

    def config_hash(self) -> str:
        # jobs and paths are deliberately excluded: they do not change output
        key = {
            "n_range": list(self.n_range),
            "bases": list(self.bases),
            "methods": [m.value for m in self.methods],
            "output_format": self.output_format,
            "timings": self.timings,
        }
        return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()


@dataclass
class ScanSummary:
    records: int = 0
    agreements: int = 0
    disagreements: int = 0
    resumed_from: int | None = None
    rows: list[dict] = field(default_factory=list, repr=False)


def evaluate_n(n: int, cells: Sequence[Cell]) -> list[TestReport]:
    return [run_test(method, n, m) for m, method in cells]


def iter_results(
    cells: Sequence[Cell], start: int, stop: int, jobs: int
) -> Iterator[tuple[int, list[TestReport]]]:
    """Yield ``(n, reports)`` for ``start <= n <= stop`` in ascending order."""
    ns = range(start, stop + 1)
    work = partial(evaluate_n, cells=cells)
    if jobs == 1:
        for n in ns:
            yield n, work(n)
        return
    pool = ProcessPoolExecutor(max_workers=jobs)
    try:
        chunk = max(1, min(16, len(ns) // (4 * jobs)))
        yield from zip(ns, pool.map(work, ns, chunksize=chunk))
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def load_checkpoint(path: str) -> dict:
    try:
        with open(path) as fh:
            state = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if (
        not isinstance(state, dict)
        or set(state) != {"config_hash", "last_completed_n"}
        or not isinstance(state["config_hash"], str)
        or not isinstance(state["last_completed_n"], int)
    ):
        raise CheckpointError(f"checkpoint {path} is malformed")
    return state


def write_checkpoint(path: str, config_hash: str, last_completed_n: int) -> None:
    tmp = path + ".tmp"
    try:
        with open(tmp, "w") as fh:
            json.dump({"config_hash": config_hash, "last_completed_n": last_completed_n}, fh)
        os.replace(tmp, path)
    except OSError as exc:
        raise CheckpointError(f"cannot write checkpoint {path}: {exc}") from exc


def _recover_rows(config: ScanConfig, output_path: str, last: int) -> tuple[list[dict], int]:
    """Rows of the existing report covering n <= last, and the byte offset
    where they end.  Anything past it (a partially written n) is discarded."""
    fmt = config.output_format
    expected = len(config.cells()) * (last - config.n_range[0] + 1)
    try:
        with open(output_path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CheckpointError(f"cannot read report {output_path} to resume: {exc}") from exc
    lines = data.split(b"\n")
    offset = 0
    if fmt == "csv":
        if lines[0].decode(errors="replace") != ",".join(SCAN_FIELDS):
            raise CheckpointError(f"report {output_path} has no CSV header")
        offset = len(lines[0]) + 1
        lines = lines[1:]
    # the element after the final newline is never a whole record
    complete = lines[:-1]
    if len(complete) < expected:
        raise CheckpointError(
            f"report {output_path} holds {len(complete)} records, checkpoint promises {expected}"
        )
    rows = []
    for line in complete[:expected]:
        try:
            row = parse_line(line.decode(), fmt, SCAN_FIELDS)
        except (ValueError, UnicodeDecodeError) as exc:
            raise CheckpointError(f"report {output_path} is corrupted: {exc}") from exc
        if row["n"] > last:
            raise CheckpointError(f"report {output_path} does not match checkpoint")
        rows.append(row)
        offset += len(line) + 1
    return rows, offset


def _tally(summary: ScanSummary, row: dict) -> None:
    summary.rows.append(row)
    summary.records += 1
    if row["agreed_with_oracle"]:
        summary.agreements += 1
    else:
        summary.disagreements += 1


def run_scan(
    config: ScanConfig,
    *,
    output_path: str | None = None,
    stream: TextIO | None = None,
    resume: bool = False,
    restart: bool = False,
    on_n_complete: Callable[[int], None] | None = None,
) -> ScanSummary:
    """Evaluate every cell, cross-check against the sieve and emit records.

    Records go to ``output_path`` when given, else to ``stream`` (stdout by
    default).  Checkpointing needs a report file, since resuming truncates
    it back to the last checkpointed ``n`` and appends from there.
    """
    fmt = config.output_format
    ckpt = config.checkpoint_path
    if ckpt and output_path is None:
        raise DomainError("--checkpoint requires --output (the report must be a file)")
    if ckpt and fmt == "table":
        raise DomainError("table output is not resumable; use json or csv with --checkpoint")

    lo, hi = config.n_range
    digest = config.config_hash()
    start = lo
    offset: int | None = None
    summary = ScanSummary()
    if ckpt and resume and not restart and os.path.exists(ckpt):
        state = load_checkpoint(ckpt)
        last = state["last_completed_n"]
        if state["config_hash"] != digest:
            log.warning("checkpoint %s belongs to a different config; restarting", ckpt)
        elif not lo - 1 <= last <= hi:
            raise CheckpointError(f"checkpoint {ckpt} is outside range {lo}:{hi}")
        elif last >= lo:
            rows, offset = _recover_rows(config, output_path, last)
            for row in rows:
                _tally(summary, row)
            start = last + 1
            summary.resumed_from = start

    close = output_path is not None
    if output_path is not None and offset is not None:
        out: TextIO = open(output_path, "r+", newline="")
        out.seek(offset)
        out.truncate()
    elif output_path is not None:
        out = open(output_path, "w", newline="")
    else:
        out = stream if stream is not None else sys.stdout
    try:
        writer = RecordWriter(out, fmt, SCAN_FIELDS)
        if offset is None:
            writer.header()
        out.flush()
        if ckpt:
            write_checkpoint(ckpt, digest, start - 1)

        flags = oracle.sieve_flags(hi)
        for n, reports in iter_results(config.cells(), start, hi, config.jobs):
            truth = bool(flags[n])
            for rep in reports:
                agreed = rep.verdict == truth
                row = report_row(rep, agreed, timings=config.timings)
                writer.write(row)
                _tally(summary, row)
                if not agreed:
                    log.error("oracle disagreement: %s n=%d m=%s", rep.method, n, rep.m)
            out.flush()
            if ckpt:
                write_checkpoint(ckpt, digest, n)
            if on_n_complete is not None:
                on_n_complete(n)
    finally:
        if close:
            out.close()
    return summary
