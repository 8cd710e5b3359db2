"""Report rendering: one CSV summary plus matplotlib figures, written to a
directory. Works headless (Agg backend is forced before pyplot import)."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .metrics import CATEGORIES  # noqa: E402


def write_report(document: dict, report_dir: Path) -> list[Path]:
    """Render ``document`` (a results document) into ``report_dir``.

    Writes summary.csv, categories.png and pass_at_k.png; returns the paths.
    """
    report_dir.mkdir(parents=True, exist_ok=True)
    written = [
        _write_csv(document, report_dir / "summary.csv"),
        _plot_categories(document, report_dir / "categories.png"),
        _plot_pass_at_k(document, report_dir / "pass_at_k.png"),
    ]
    return written


def _write_csv(document: dict, path: Path) -> Path:
    k_values = sorted(int(k) for k in document["summary"]["pass_at"])
    header = ["problem_id", "n", "c"] + [f"pass@{k}" for k in k_values]
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for problem in document["problems"]:
            row = [problem["id"], problem["n"], problem["c"]]
            row += [f"{problem['pass_at'][str(k)]:.6f}" for k in k_values]
            writer.writerow(row)
        summary_row = ["mean", "", ""]
        summary_row += [
            f"{document['summary']['pass_at'][str(k)]['mean']:.6f}"
            for k in k_values
        ]
        writer.writerow(summary_row)
    return path


def _plot_categories(document: dict, path: Path) -> Path:
    categories = document["summary"]["categories"]
    counts = [categories[name]["count"] for name in CATEGORIES]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(CATEGORIES, counts, color=["#4c9f70", "#d1603d", "#c9a227", "#5b7db1"])
    ax.set_ylabel("samples")
    ax.set_title("Outcome categories")
    for i, count in enumerate(counts):
        ax.annotate(str(count), (i, count), ha="center", va="bottom")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _plot_pass_at_k(document: dict, path: Path) -> Path:
    pass_at = document["summary"]["pass_at"]
    k_values = sorted(int(k) for k in pass_at)
    means = [pass_at[str(k)]["mean"] for k in k_values]
    stds = [pass_at[str(k)]["std"] for k in k_values]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(k_values, means, yerr=stds, marker="o", capsize=4)
    ax.set_xlabel("k")
    ax.set_ylabel("pass@k")
    ax.set_ylim(-0.05, 1.05)
    ax.set_xticks(k_values)
    ax.set_title("pass@k across problems")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
