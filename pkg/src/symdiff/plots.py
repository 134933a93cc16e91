"""Figure and delimited-file rendering for comparison reports."""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.colors import ListedColormap

# non-member, member, error
_CMAP = ListedColormap(["#c64a4a", "#4a9e62", "#b5b5b5"])


def write_compare_csv(report, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in report.to_csv_rows():
            writer.writerow(row)


def _shorten(s, width=28):
    return s if len(s) <= width else s[: width - 1] + "…"


def render_compare_figure(report, path):
    """Membership matrix: rows are corpus elements, columns are power
    kinds; green = member, red = non-member, grey = per-cell error."""
    nrows = max(len(report.corpus), 1)
    ncols = max(len(report.kinds), 1)
    data = [
        [2 if v.error else (1 if v.member else 0) for v in row]
        for row in report.cells
    ] or [[2] * ncols]
    fig, ax = plt.subplots(
        figsize=(1.6 + 1.25 * ncols, 0.9 + 0.38 * nrows), dpi=150
    )
    ax.imshow(data, cmap=_CMAP, vmin=0, vmax=2, aspect="auto")
    ax.set_xticks(range(ncols))
    ax.set_xticklabels([k.describe() for k in report.kinds], rotation=20, ha="right", fontsize=8)
    ax.set_yticks(range(nrows))
    ax.set_yticklabels([_shorten(str(f)) for f in report.corpus] or [""], fontsize=7)
    for i, row in enumerate(report.cells):
        for j, v in enumerate(row):
            mark = "err" if v.error else ("yes" if v.member else "no")
            ax.text(j, i, mark, ha="center", va="center", fontsize=7, color="white")
    status = "agree" if report.agreement else f"{len(report.disagreements)} disagreement(s)"
    ax.set_title(f"membership by power kind — {status}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
