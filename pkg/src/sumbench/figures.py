"""Matplotlib figure rendering for report outputs.

Comparison tables and survey aggregates get chart files written next to
their CSV/JSON exports. Rendering is headless (Agg) and file-only.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evalharness import ComparisonTable
from .surveyd import CRITERIA, SurveyAggregate


def render_comparison(table: ComparisonTable, out_path: str | Path) -> Path:
    """Grouped bar chart of aggregate scores, one group per metric."""
    out_path = Path(out_path)
    run_names = [name for name, _ in table.rows]
    width = 0.8 / max(len(run_names), 1)

    fig, ax = plt.subplots(figsize=(max(6.0, 2.0 * len(table.metrics)), 4.0))
    for offset, (name, values) in enumerate(table.rows):
        xs, ys = [], []
        for i, metric in enumerate(table.metrics):
            value = values.get(metric)
            if value is not None:
                xs.append(i + offset * width)
                ys.append(value)
        ax.bar(xs, ys, width=width, label=name)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(table.metrics))])
    ax.set_xticklabels(table.metrics)
    ax.set_ylabel("aggregate score")
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_survey_aggregate(agg: SurveyAggregate, out_dir: str | Path) -> list[Path]:
    """Rating histograms per criterion plus an FP/FN ratio summary."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    fig, axes = plt.subplots(1, len(CRITERIA), figsize=(3.0 * len(CRITERIA), 3.2), sharey=True)
    for ax, criterion in zip(axes, CRITERIA):
        counts = agg.rating_histograms[criterion]
        ax.bar(range(1, 6), counts, color="tab:blue")
        ax.set_title(criterion)
        ax.set_xticks(range(1, 6))
        ax.set_xlabel("rating")
    axes[0].set_ylabel("responses")
    fig.tight_layout()
    ratings_path = out_dir / "rating_histograms.png"
    fig.savefig(ratings_path, dpi=150)
    plt.close(fig)
    written.append(ratings_path)

    fig, ax = plt.subplots(figsize=(4.0, 3.2))
    ax.bar(["FP ratio", "FN ratio"], [agg.fp_ratio, agg.fn_ratio], color=["tab:red", "tab:orange"])
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("ratio of judgments")
    fig.tight_layout()
    ratio_path = out_dir / "fp_fn_ratio.png"
    fig.savefig(ratio_path, dpi=150)
    plt.close(fig)
    written.append(ratio_path)
    return written
