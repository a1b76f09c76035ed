"""Figures written next to selection reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .measures import RelationalTable  # noqa: E402
from .miner import Rule  # noqa: E402

plt.rcParams.update({
    "figure.dpi": 100,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 9,
    "legend.fontsize": 8,
    "svg.hashsalt": "reprules",
})


def _ids(rules) -> set[int]:
    return {r.id for r in rules} if rules is not None else set()


def plot_selection(t: RelationalTable, path: str | Path, sky: list[Rule] | None = None,
                   rr: list[Rule] | None = None, tb: list[Rule] | None = None,
                   measures: tuple[int, int] = (0, 1)) -> Path:
    """Scatter all rules on two measures, layering TB, RR and skyline rules."""
    path = Path(path)
    vals = t.as_floats()
    ids = np.array([r.id for r in t.rules])
    fig, ax = plt.subplots(figsize=(5, 4))
    if vals.shape[1] == 1:
        x, y = np.arange(len(t)), vals[:, 0]
        xlabel, ylabel = "rule", t.measures[0].name
    else:
        a, b = measures
        x, y = vals[:, a], vals[:, b]
        xlabel, ylabel = t.measures[a].name, t.measures[b].name
    ax.scatter(x, y, s=6, c="0.8", label=f"all ({len(t)})", rasterized=len(t) > 5000)
    for rules, style, name in ((tb, dict(c="tab:blue", s=8), "TB"),
                               (rr, dict(c="tab:orange", s=12), "RR"),
                               (sky, dict(c="tab:red", s=30, marker="*"), "Sky")):
        if rules is None:
            continue
        sel = np.isin(ids, list(_ids(rules)))
        ax.scatter(x[sel], y[sel], label=f"{name} ({int(sel.sum())})", **style)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_counts(counts: dict[str, int | None], path: str | Path) -> Path:
    """Bar chart of the selection sizes (log axis when all are positive)."""
    path = Path(path)
    names = [k for k, v in counts.items() if v is not None]
    values = [counts[k] for k in names]
    fig, ax = plt.subplots(figsize=(4, 3))
    bars = ax.bar(names, values, color=["0.6", "tab:blue", "tab:orange", "tab:red"][: len(names)])
    if values and min(values) > 0:
        ax.set_yscale("log")
    ax.bar_label(bars, labels=[str(v) for v in values], fontsize=8)
    ax.set_ylabel("rules")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path
