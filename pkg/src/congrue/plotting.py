"""Figures written next to the delimited reports."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import BenchRecord  # noqa: E402


def plot_bench(records: Sequence[BenchRecord], path: str) -> str:
    """Median time per n for every method, log-scaled."""
    series: dict[str, list[tuple[int, int]]] = defaultdict(list)
    for r in records:
        series[r.method].append((r.n, r.elapsed_ns))
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for method, pts in series.items():
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=1, label=method)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("median time per test [ns]")
    ax.legend(frameon=False)
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_scan(rows: Iterable[dict], path: str) -> str:
    """Verdict map: one row per (method, base) cell, primes filled, disagreements in red."""
    rows = list(rows)
    labels: list[str] = []
    for r in rows:
        label = r["method"] if r["m"] is None else f"{r['method']} m={r['m']}"
        if label not in labels:
            labels.append(label)
    fig, ax = plt.subplots(figsize=(8, 1.2 + 0.4 * len(labels)))
    for kind, color in (("prime", "tab:blue"), ("bad", "tab:red")):
        xs, ys = [], []
        for r in rows:
            label = r["method"] if r["m"] is None else f"{r['method']} m={r['m']}"
            hit = (not r["agreed_with_oracle"]) if kind == "bad" else (r["verdict"] and r["agreed_with_oracle"])
            if hit:
                xs.append(r["n"])
                ys.append(labels.index(label))
        if xs:
            ax.scatter(xs, ys, s=6, marker="|", color=color, label=kind if kind == "prime" else "disagrees with oracle")
    ax.set_yticks(range(len(labels)), labels)
    ax.set_ylim(-0.5, len(labels) - 0.5)
    ax.set_xlabel("n")
    ax.legend(frameon=False, loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
