"""Matplotlib figure output for instance maps and evaluation reports."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .metrics import MatchReport
from .model import InstanceMap

_BACKGROUND = (0.12, 0.12, 0.12)


def instance_colors(n: int) -> np.ndarray:
    cmap = plt.get_cmap("tab20")
    return np.array([cmap(i % 20)[:3] for i in range(n)])


def save_instance_figure(imap: InstanceMap, path, title: str | None = None) -> None:
    """Render an instance map to an image file; background is dark gray."""
    ids = imap.instance_ids
    rgb = np.empty(ids.shape + (3,))
    rgb[:] = _BACKGROUND
    count = int(ids.max())
    if count:
        colors = instance_colors(count)
        fg = ids > 0
        rgb[fg] = colors[ids[fg] - 1]
    fig, ax = plt.subplots(figsize=(6, 6 * ids.shape[0] / ids.shape[1]))
    ax.imshow(rgb, interpolation="nearest")
    ax.set_axis_off()
    if title is None:
        title = f"{count} instances"
    ax.set_title(title)
    for i in range(1, count + 1):
        ys, xs = np.nonzero(ids == i)
        cls = int(imap.class_labels[ys[0], xs[0]])
        ax.text(
            xs.mean(), ys.mean(), str(cls),
            color="white", ha="center", va="center", fontsize=8,
        )
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_report_figure(report: MatchReport, path) -> None:
    """Bar chart of per-class precision and recall."""
    classes = sorted(report.per_class)
    fig, ax = plt.subplots(figsize=(6, 4))
    if classes:
        pos = np.arange(len(classes))
        ax.bar(pos - 0.2, [report.per_class[c].precision for c in classes], 0.4,
               label="precision")
        ax.bar(pos + 0.2, [report.per_class[c].recall for c in classes], 0.4,
               label="recall")
        ax.set_xticks(pos)
        ax.set_xticklabels([str(c) for c in classes])
    ax.set_ylim(0, 1.05)
    ax.set_xlabel("class")
    ax.set_title(f"P={report.precision:.3f} R={report.recall:.3f} F1={report.f1:.3f}")
    ax.legend(loc="lower right")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_grid_figure(rows, path) -> None:
    """Mean F1 for every grid point, best point highlighted."""
    f1 = [row.mean_f1 for row in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(len(f1)), f1, marker="o", lw=1)
    best = int(np.argmax(f1))
    ax.plot([best], [f1[best]], marker="*", ms=14, color="red")
    row = rows[best]
    ax.annotate(
        f"w={row.w:g}, bs={row.beta_small:g}, bb={row.beta_big:g}",
        (best, f1[best]), textcoords="offset points", xytext=(6, -12), fontsize=8,
    )
    ax.set_xlabel("grid point")
    ax.set_ylabel("mean F1")
    ax.set_ylim(-0.02, 1.05)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
