"""Figure rendering for table reports.

The tables themselves stay exact; a figure is presentation, so this is
the one module that converts rationals to floats.  The Agg backend is
forced before pyplot loads, so rendering works with no display.
"""

from __future__ import annotations

from typing import Mapping, Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_hurwitz_figure(rows: Sequence[Mapping], path: str) -> str:
    """Render a table of Hurwitz values as one scatter per (g, n)
    group — degree d against H on a log scale — and write it to
    ``path``.  Returns the path.
    """
    if not rows:
        raise ValueError("nothing to plot: the table is empty")
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    groups: dict[tuple[int, int], list] = {}
    for row in rows:
        groups.setdefault((row["g"], len(row["mu"])), []).append(row)
    for (g, n), members in sorted(groups.items()):
        xs = [row["d"] for row in members]
        ys = [float(row["H"]) for row in members]
        ax.scatter(xs, ys, label=f"g={g}, n={n}", alpha=0.8)
    r = rows[0]["r"]
    ax.set_yscale("log")
    ax.set_xlabel("degree d")
    ax.set_ylabel("H")
    ax.set_title(f"Hurwitz numbers, r = {r}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
