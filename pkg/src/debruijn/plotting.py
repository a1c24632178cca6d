"""Figure rendering for census and benchmark reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import BenchPoint, fit_linear
from .census import CensusReport


def save_census_figure(reports: list[CensusReport], path: str) -> None:
    """Bar chart of distinct vs expected counts, one bar group per census."""
    labels = [f"{r.family}\nn={r.n}" for r in reports]
    xs = range(len(reports))
    fig, ax = plt.subplots(figsize=(max(6.0, 1.4 * len(reports)), 4.5))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], [r.expected for r in reports], width,
           label="expected", color="#888888")
    bar_colors = ["#2a7e43" if r.match else "#b03a2e" for r in reports]
    ax.bar([x + width / 2 for x in xs], [r.distinct for r in reports], width,
           label="distinct", color=bar_colors)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("sequences")
    ax.set_yscale("log")
    ax.set_title("census: distinct de Bruijn sequences per family")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bench_figure(points: list[BenchPoint], path: str) -> None:
    """Per-bit streaming cost against order, with the least-squares line."""
    xs = [p.n for p in points]
    ys = [p.ns_per_bit for p in points]
    intercept, slope, residual = fit_linear([float(x) for x in xs], ys)
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.plot(xs, ys, "o", label="measured")
    ax.plot(xs, [intercept + slope * x for x in xs], "-",
            label=f"fit {intercept:.0f} + {slope:.1f}n (residual {residual:.1%})")
    ax.set_xlabel("order n")
    ax.set_ylabel("ns per bit")
    ax.set_title("streaming cost per output bit")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
