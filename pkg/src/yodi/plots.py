"""Matplotlib figures for the report commands (ambiguity, evaluate, stats).

Everything renders on the Agg backend and is written to files next to the
delimited report output; nothing here opens a window.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure

from .corpus import AmbiguityReport, CorpusStats
from .metrics import CATEGORIES, EvalReport

_DPI = 150


def ambiguity_figure(report: AmbiguityReport) -> Figure:
    """Variant-count histogram plus the headline ambiguity fractions."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    dist = sorted(report.variant_count_distribution.items())
    ax1.bar([k for k, _ in dist], [v for _, v in dist], color="#33658a")
    ax1.set_xlabel("variants per undiacritized form")
    ax1.set_ylabel("forms")
    ax1.set_title("lexicon ambiguity")
    keys = [k for k, _ in report.most_ambiguous][:10][::-1]
    values = [v for _, v in report.most_ambiguous][:10][::-1]
    ax2.barh(keys, values, color="#f26419")
    ax2.set_xlabel("variants")
    ax2.set_title(
        f"ambiguous token fraction {report.ambiguous_token_fraction:.2f}, "
        f"mean variants/token {report.mean_variants_per_token:.2f}"
    )
    fig.tight_layout()
    return fig


def eval_figure(report: EvalReport) -> Figure:
    """Error-category breakdown and the four clipped n-gram precisions."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    counts = [report.analysis.counts.get(c, 0) for c in CATEGORIES]
    short = ["correct", "undiacritized", "wrong marks", "other word"]
    colors = ["#2f9e44", "#e8590c", "#e03131", "#862e9c"]
    ax1.bar(short, counts, color=colors)
    ax1.set_ylabel("tokens")
    ax1.set_title(f"error categories (WER {report.wer:.2f}%)")
    ax1.tick_params(axis="x", rotation=20)
    ax2.bar(["p1", "p2", "p3", "p4"], [100 * p for p in report.bleu.precisions], color="#33658a")
    ax2.set_ylim(0, 100)
    ax2.set_ylabel("%")
    ax2.set_title(f"n-gram precisions (BLEU {report.bleu.bleu:.2f})")
    fig.tight_layout()
    return fig


def stats_figure(stats: CorpusStats) -> Figure:
    """Per-source word counts and vocabulary sizes."""
    fig, ax = plt.subplots(figsize=(7, 0.6 + 0.5 * max(1, len(stats.per_source))))
    labels = sorted(stats.per_source)
    words = [stats.per_source[label].words for label in labels]
    ax.barh(labels, words, color="#33658a")
    ax.set_xlabel("words")
    ax.set_title(f"corpus size by source ({stats.total.words} words total)")
    fig.tight_layout()
    return fig


def save_figures(figures: dict[str, Figure], outdir: str | Path) -> list[Path]:
    """Write each figure as PNG into outdir; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for name, fig in figures.items():
        path = outdir / f"{name}.png"
        fig.savefig(path, dpi=_DPI)
        plt.close(fig)
        written.append(path)
    return written
