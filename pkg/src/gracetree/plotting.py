"""Summary figures for search reports, written next to the text/JSON output."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .search import SearchReport  # noqa: E402

CASE_ORDER = ("base", "case1", "case2a", "case2b", "no-spine")


def _by_n(report: SearchReport, key) -> dict[int, dict[str, int]]:
    table: dict[int, dict[str, int]] = defaultdict(lambda: defaultdict(int))
    for inst in report.instances:
        for name, count in key(inst):
            table[inst["n"]][name] += count
    return table


def _stacked(ax, table, names):
    ns = sorted(table)
    bottom = [0] * len(ns)
    for name in names:
        vals = [table[n].get(name, 0) for n in ns]
        if any(vals):
            ax.bar([str(n) for n in ns], vals, bottom=bottom, label=name)
            bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_xlabel("vertices")
    ax.legend(frameon=False)


def plot_report(report: SearchReport, path: str | Path) -> Path:
    """Render one figure summarising ``report``; returns the written path."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 3.6))
    if report.kind == "explore-case2b":
        _stacked(ax, _by_n(report, lambda r: [(r["case"], 1)]), CASE_ORDER)
        ax.set_ylabel("trees")
        ax.set_title("induction case per 3-distant tree")
    elif report.kind == "verify-lemma2":
        _stacked(ax, _by_n(report, lambda r: r["layouts"].items()), ("path", "zero-adjacent"))
        ax.set_ylabel("strong labellings")
        ax.set_title("where the edge labelled n-2 sits")
    elif report.kind == "hunt-perms":
        idx = range(len(report.instances))
        ax.bar(idx, [r["strong_labellings"] for r in report.instances], label="strong labellings")
        if report.instances and "perm_count" in report.instances[0]:
            ax.plot(idx, [r["perm_count"] for r in report.instances], "o", color="k", label="own generalised perms")
        ax.set_xlabel("instance")
        ax.set_yscale("log")
        ax.legend(frameon=False)
        ax.set_title(f"n={report.params['n']}: {report.summary.get('count', 0)} common generalised perms")
    else:
        diam = defaultdict(int)
        for r in report.instances:
            # canonical form of a center-rooted tree: max depth bounds the diameter
            depth = max(int(x) for x in r["form"].split(","))
            diam[depth] += 1
        ks = sorted(diam)
        ax.bar([str(k) for k in ks], [diam[k] for k in ks])
        ax.set_xlabel("height from center")
        ax.set_ylabel("trees")
        ax.set_title(f"{report.params.get('family', 'all')} trees on {report.params.get('n')} vertices")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
