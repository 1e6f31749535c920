"""Matplotlib rendering for sweep reports.

The sweep CSV is the primary artifact; these figures are written next to it
so a run leaves both the delimited data and a quick visual read.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_sweep_figures"]

_METRICS = ["ari", "order_agreement", "loops"]


def _series(rows, key):
    pts = [(r["alpha"], r[key]) for r in rows if r.get(key) not in (None, "")]
    pts.sort()
    return [p[0] for p in pts], [p[1] for p in pts]


def render_sweep_figures(mean_rows: list[dict], out_csv_path) -> list[Path]:
    """Write metric and value-component figures alongside the sweep CSV.

    ``mean_rows`` is one dict per alpha with the averaged columns of the CSV.
    Returns the list of files written.
    """
    base = Path(out_csv_path).with_suffix("")
    written: list[Path] = []

    with_metrics = [m for m in _METRICS if any(r.get(m) not in (None, "") for r in mean_rows)]
    if with_metrics:
        fig, axes = plt.subplots(1, len(with_metrics), figsize=(4 * len(with_metrics), 3.2))
        if len(with_metrics) == 1:
            axes = [axes]
        for ax, metric in zip(axes, with_metrics):
            xs, ys = _series(mean_rows, metric)
            ax.plot(xs, ys, marker="o", ms=3, color="black")
            ax.set_xlabel(r"$\alpha$")
            ax.set_title(metric)
            ax.set_ylim(-0.05, 1.05)
            ax.grid(alpha=0.3)
        fig.tight_layout()
        path = base.parent / (base.name + "_metrics.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    xs, sd = _series(mean_rows, "val_sd")
    _, vg = _series(mean_rows, "val_g")
    if xs:
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
        ax1.plot(xs, sd, marker="o", ms=3, label="similarity value", color="black")
        ax1.plot(xs, vg, marker="s", ms=3, label="order value", color="gray")
        ax1.set_xlabel(r"$\alpha$")
        ax1.set_title("objective components")
        ax1.legend(fontsize=8)
        ax1.grid(alpha=0.3)
        ax2.plot(sd, vg, marker="o", ms=3, color="black")
        ax2.set_xlabel("similarity value")
        ax2.set_ylabel("order value")
        ax2.set_title("value trade-off")
        ax2.grid(alpha=0.3)
        fig.tight_layout()
        path = base.parent / (base.name + "_values.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
