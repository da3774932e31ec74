"""Figure rendering for sweep results: one PNG per metric, mean with a one
standard deviation band, one line per method."""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

_METRIC_LABELS = {
    "sum_rate": "sum rate (bit/s/Hz)",
    "mean_admission": "mean admission ratio",
    "var_admission": "variance of admission ratio",
    "max_wait": "maximum wait time (slots)",
    "avg_delay": "average queueing delay (slots)",
}


def render_figures(rows: list, outdir: str) -> list:
    """Render sweep rows to <outdir>/<metric>.png; returns the written paths."""
    os.makedirs(outdir, exist_ok=True)
    metrics = sorted({r.metric for r in rows})
    sweep_var = rows[0].sweep_var
    paths = []
    for metric in metrics:
        sel = [r for r in rows if r.metric == metric]
        methods = sorted({r.method for r in sel})
        fig, ax = plt.subplots(figsize=(6, 4))
        for method in methods:
            pts = [r for r in sel if r.method == method]
            x = np.arange(len(pts)) if sweep_var == "policy" \
                else np.array([float(r.sweep_value) for r in pts])
            order = np.argsort(x)
            x = x[order]
            mean = np.array([pts[k].mean for k in order])
            std = np.array([pts[k].std for k in order])
            ax.plot(x, mean, marker="o", label=method)
            ax.fill_between(x, mean - std, mean + std, alpha=0.15)
        ax.set_xlabel(sweep_var)
        ax.set_ylabel(_METRIC_LABELS.get(metric, metric))
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = os.path.join(outdir, f"{metric}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths
