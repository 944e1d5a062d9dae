"""Render the query-ratio curves to an image file."""

from __future__ import annotations

import numpy as np

from .bounds import example_points, ly_upper, packing_lower, r_range_upto, ratio_curve


def plot_bounds(path, n_max: int, s_max: int = 3, dpi: int = 150) -> None:
    """Query ratio against vector length, log-scaled in ``n``.

    The format follows the file extension (png, pdf, svg, ...).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # Fixed metadata keeps repeated renders byte-identical.
    metadata = {"Software": None} if str(path).lower().endswith(".png") else {}

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ns = np.unique(np.geomspace(2, max(n_max, 3), 400).astype(int))
    ax.plot(ns, [packing_lower(int(n)) for n in ns], "k-", lw=1.5, label="Packing")
    ax.plot(ns, [ly_upper(int(n)) for n in ns], "k--", lw=1.2, label="LY ($\\phi=0$)")

    records = [rec for rec in ratio_curve(s_max, r_range_upto(n_max)) if rec.n <= n_max]
    styles = ["C0-", "C1-", "C2-", "C3-", "C4-"]
    for s in range(1, s_max + 1):
        pts = sorted((rec.n, float(rec.gs_ratio_estimates[s])) for rec in records if s in rec.gs_ratio_estimates)
        if pts:
            x, y = zip(*pts)
            ax.plot(x, y, styles[(s - 1) % len(styles)], lw=1.2, label=f"$Q_{s}$:GS")
    wil = sorted((rec.n, float(rec.wilson_ratio_estimate)) for rec in records if rec.wilson_ratio_estimate is not None)
    if wil:
        x, y = zip(*wil)
        ax.plot(x, y, "C3:", lw=1.5, label="$Q_3$:W")
    ex = [(n, float(v)) for n, v in example_points() if n <= n_max]
    if ex:
        x, y = zip(*ex)
        ax.plot(x, y, "ko", ms=5, label="examples")

    ax.set_xscale("log")
    ax.set_ylim(0, 1.05)
    ax.set_xlabel("n (bits in the unknown vector)")
    ax.set_ylabel("query ratio m/n")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata=metadata)
    plt.close(fig)
