"""Figures for run reports: conflict histogram and the cost-exponent sweep."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .graph import kappa_cost  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
}


_METADATA = {
    ".png": {"Software": None},
    ".svg": {"Creator": None, "Date": None},
    ".pdf": {"Creator": None, "Producer": None, "CreationDate": None},
}


def savefig(fig, path):
    # stripped metadata keeps reruns byte-identical
    fig.savefig(path, metadata=_METADATA.get(Path(path).suffix.lower()))
    plt.close(fig)


def plot_conflict_profile(kappa, path, title: str = "", marks=(1.0,)):
    """Histogram of per-vertex conflicts next to ``sum(kappa ** p)`` over a range of ``p``.

    Dashed lines show the two limits of the sweep: the number of conflicted
    vertices (small ``p``) and ``max(kappa) ** p`` (large ``p``).
    """
    kappa = list(kappa)
    with plt.rc_context(STYLE):
        fig, (ax_h, ax_c) = plt.subplots(1, 2, figsize=(9, 3.5))

        values, counts = np.unique(np.asarray(kappa, dtype=int), return_counts=True)
        ax_h.bar(values, counts, width=0.8, color="0.35")
        ax_h.set_xlabel("conflicts at vertex")
        ax_h.set_ylabel("vertices")
        if len(values):
            ax_h.set_xticks(values)

        ps = np.logspace(-2, 1, 200)
        cost = [kappa_cost(kappa, p) for p in ps]
        top = max(kappa, default=0)
        ax_c.plot(ps, cost, color="C0", label="cost")
        ax_c.axhline(sum(x > 0 for x in kappa), color="C1", ls="--", lw=1, label="conflicted vertices")
        if top > 0:
            ax_c.plot(ps, top**ps, color="C2", ls="--", lw=1, label="max conflicts ** p")
        for p in marks:
            ax_c.plot([p], [kappa_cost(kappa, p)], "o", color="k", ms=4)
        ax_c.set_xscale("log")
        if top > 1:
            ax_c.set_yscale("log")
        ax_c.set_xlabel("p")
        ax_c.set_ylabel("sum of conflicts ** p")
        ax_c.legend(frameon=False, fontsize=8)
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        savefig(fig, path)
