"""Figures and CSV tables for conjecture reports."""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import ConjectureReport  # noqa: E402


def write_csv(report: ConjectureReport, path: Path) -> Path:
    """One row per typable term: term, inferred index, observed steps, status."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["term", "b_inferred", "steps_observed", "status"])
        for s in report.samples:
            writer.writerow([s.term, s.b_inferred, s.steps_observed, s.status])
    return path


def plot_index_vs_steps(report: ConjectureReport, path: Path) -> Path:
    """Scatter of inferred index against observed steps; marker area grows with multiplicity."""
    path = Path(path)
    counts = Counter((s.b_inferred, s.steps_observed) for s in report.samples)
    fig, ax = plt.subplots(figsize=(5, 5))
    if counts:
        xs, ys = zip(*counts)
        sizes = [12 + 6 * n ** 0.5 for n in counts.values()]
        ax.scatter(xs, ys, s=sizes, alpha=0.6, edgecolors="black", linewidths=0.5)
        top = max(max(xs), max(ys)) + 1
    else:
        top = 1
    ax.plot([0, top], [0, top], linestyle="--", color="grey", linewidth=1, label="steps = index")
    ax.set_xlabel("inferred index b")
    ax.set_ylabel("leftmost-outermost steps")
    h = report.header
    ax.set_title(
        f"seed {h.get('seed', '?')}, {report.typable}/{report.total} typable, "
        f"{len(report.mismatches)} mismatches",
        fontsize=9,
    )
    ax.legend(loc="upper left", fontsize=8)
    ax.set_xlim(-0.5, top + 0.5)
    ax.set_ylim(-0.5, top + 0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
