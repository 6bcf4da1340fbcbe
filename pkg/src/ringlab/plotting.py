"""Figure for a suite report: instances against hypothesis hits per check."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_report(report, path):
    ids = [r.id for r in report.results]
    inst = np.array([r.instances for r in report.results], dtype=float)
    hits = np.array([r.hypothesis_hits for r in report.results], dtype=float)
    x = np.arange(len(ids))
    fig, ax = plt.subplots(figsize=(max(8, 0.38 * len(ids)), 4.8))
    w = 0.4
    ax.bar(x - w / 2, inst, w, label="instances", color="#8da0cb")
    ax.bar(x + w / 2, hits, w, label="hypothesis hits", color="#fc8d62")
    for i, r in enumerate(report.results):
        if r.status != "Proved":
            ax.annotate(r.status, (x[i], max(inst[i], hits[i], 1)), rotation=90, fontsize=7,
                        ha="center", va="bottom")
    ax.set_yscale("symlog", linthresh=1)
    ax.set_xticks(x)
    ax.set_xticklabels(ids, rotation=70, ha="right", fontsize=8)
    ax.set_ylabel("count")
    ax.set_title(f"theorem checks on corpus {report.digest[:12]}")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
