"""Render regression reports as figures and a delimited table.

One scatter-plus-fit figure per construct pairing, written next to a
CSV of the fitted lines. Paths come back so callers can list what was
produced.
"""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .metrics import RegressionResult  # noqa: E402


def write_regression_csv(table: dict[str, RegressionResult],
                         path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["pairing", "slope", "intercept", "r_squared", "n"])
        for key in sorted(table):
            result = table[key]
            writer.writerow([key, repr(result.slope), repr(result.intercept),
                             repr(result.r_squared), result.n])
    return path


def save_regression_figures(points: dict[str, list[tuple[float, float]]],
                            table: dict[str, RegressionResult],
                            out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for key in sorted(table):
        result = table[key]
        xs = [p[0] for p in points[key]]
        ys = [p[1] for p in points[key]]
        x_label, _, y_label = key.partition("_vs_")

        fig, ax = plt.subplots(figsize=(5, 4))
        ax.scatter(xs, ys, color="tab:blue", zorder=3)
        lo, hi = min(xs), max(xs)
        pad = 0.05 * (hi - lo) if hi > lo else 1.0
        line_x = [lo - pad, hi + pad]
        line_y = [result.slope * x + result.intercept for x in line_x]
        ax.plot(line_x, line_y, color="tab:red",
                label=f"y = {result.slope:.4g}x + {result.intercept:.4g}")
        ax.set_xlabel(x_label.replace("_", " "))
        ax.set_ylabel(y_label.replace("_", " "))
        ax.set_title(f"{x_label.replace('_', ' ')} vs "
                     f"{y_label.replace('_', ' ')}  (R² = {result.r_squared:.4f})")
        ax.legend(loc="best")
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        target = out_dir / f"{key}.png"
        fig.savefig(target, dpi=150)
        plt.close(fig)
        written.append(target)
    return written


def render_regression_report(points: dict[str, list[tuple[float, float]]],
                             table: dict[str, RegressionResult],
                             out_dir: str | Path) -> list[Path]:
    """Figures for every pairing plus regression.csv alongside them."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = save_regression_figures(points, table, out_dir)
    written.append(write_regression_csv(table, out_dir / "regression.csv"))
    return written
