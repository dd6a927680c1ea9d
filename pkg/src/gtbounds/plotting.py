"""Render the bound-curve figure from sweep rows.

Matplotlib with the SVG backend, pinned for byte-reproducible output:
fixed hash salt, no embedded creation date.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bounds import CurveRow

__all__ = ["save_sweep_figure", "CURVE_COLUMNS"]

#: Plotted curves, in draw order; labels match the CSV column names.
CURVE_COLUMNS = ("counting", "quantization", "individual", "main", "adaptive_rate")

_STYLES = {
    "counting": dict(color="tab:gray", linestyle="--", linewidth=1.2),
    "quantization": dict(color="tab:purple", linestyle="-", linewidth=1.2),
    "individual": dict(color="tab:green", linestyle=":", linewidth=1.6),
    "main": dict(color="tab:red", linestyle="-", linewidth=1.8),
    "adaptive_rate": dict(color="tab:blue", linestyle="-", linewidth=1.4),
}


def save_sweep_figure(rows: Sequence[CurveRow], path: str) -> None:
    """Write a self-contained SVG line chart of the sweep to ``path``."""
    if not rows:
        raise ValueError("nothing to plot: empty sweep")
    plt.rcParams["svg.hashsalt"] = "gtbounds"

    deltas = [r.delta for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    for column in CURVE_COLUMNS:
        values = np.array(
            [np.nan if getattr(r, column) is None else getattr(r, column) for r in rows]
        )
        ax.plot(deltas, values, label=column, **_STYLES[column])

    gap_deltas = [r.delta for r in rows if r.gap_flag]
    if gap_deltas:
        ax.axvspan(min(gap_deltas), max(gap_deltas), color="tab:blue", alpha=0.12, lw=0)

    ax.set_xlim(min(deltas), max(deltas))
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("defect probability")
    ax.set_ylabel("tests per item")
    ax.legend(loc="lower right", fontsize=9)
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
