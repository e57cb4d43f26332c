"""Matplotlib renderings of coverage reports and backward trees.

Figures are drawn straight onto an Agg canvas (no pyplot, no global
state) and written wherever the caller points; the CLI drops them next
to the delimited output.
"""

from __future__ import annotations

from matplotlib import colormaps
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .backward import tree_structure
from .coverage import CoverageReport


def _new_figure(width: float, height: float) -> Figure:
    fig = Figure(figsize=(width, height))
    FigureCanvasAgg(fig)
    return fig


def save_coverage_figure(report: CoverageReport, path: str) -> None:
    """Stair occupancy histogram: values per stair j, stacked by subtree k."""
    js = sorted({j for _, j in report.histogram})
    ks = sorted({k for k, _ in report.histogram})
    fig = _new_figure(max(6.0, min(14.0, len(js) * 0.12 + 4)), 4.5)
    ax = fig.subplots()
    bottom = {j: 0 for j in js}
    cmap = colormaps["viridis"]
    # One layer per subtree; small scans only touch a handful of k.
    for idx, k in enumerate(ks):
        counts = [report.histogram.get((k, j), 0) for j in js]
        shade = idx / (len(ks) - 1) if len(ks) > 1 else 0.3
        ax.bar(
            js,
            counts,
            bottom=[bottom[j] for j in js],
            width=0.9,
            label=f"k={k}",
            color=cmap(shade),
        )
        for j, c in zip(js, counts):
            bottom[j] += c
    ax.set_xlabel("stair index j")
    ax.set_ylabel("values placed")
    ax.set_title(
        f"Stair occupancy for 2..{report.bound} "
        f"(invariant: {report.in_invariant}, unplaced: {len(report.budget_exceeded)})"
    )
    if len(ks) <= 12:
        ax.legend(fontsize="small", ncols=2)
    fig.tight_layout()
    fig.savefig(path)


def save_tree_figure(k: int | None, depth: int, path: str) -> None:
    """Backward tree drawing: one row per stair, values as labels.

    Mirrors tree_dot at desk scale; pass k = None for the {1, 2, 4}
    tree.  Useful up to depth ~8 before labels collide.
    """
    nodes, edges = tree_structure(k, depth)
    by_stair: dict[int, list[int]] = {}
    for value, stair, _ in nodes:
        by_stair.setdefault(stair, []).append(value)
    pos: dict[int, tuple[float, float]] = {}
    for stair, values in by_stair.items():
        values.sort()
        for i, v in enumerate(values):
            pos[v] = ((i + 1) / (len(values) + 1), -stair)
    widest = max(len(vs) for vs in by_stair.values())
    fig = _new_figure(max(6.0, widest * 1.1), max(4.0, len(by_stair) * 0.9))
    ax = fig.subplots()
    for parent, child in edges:
        (x0, y0), (x1, y1) = pos[parent], pos[child]
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops={"arrowstyle": "-|>", "color": "0.45", "lw": 0.8},
        )
    for value, stair, code in nodes:
        x, y = pos[value]
        text = str(value) if not code else f"{value}\n{code}"
        ax.text(
            x,
            y,
            text,
            ha="center",
            va="center",
            fontsize=8,
            bbox={"boxstyle": "round,pad=0.25", "fc": "#e8f0fe", "ec": "0.3"},
        )
    for stair in by_stair:
        ax.text(0.01, -stair, f"stair {stair}", fontsize=8, color="0.4", va="center")
    ax.set_xlim(0, 1.05)
    ax.set_ylim(-(max(by_stair) + 0.6), 0.6 - min(by_stair))
    ax.axis("off")
    root = "{1,2,4}" if k is None else f"subtree k={k}"
    ax.set_title(f"Backward reachability tree toward {root}, {depth} stair(s)")
    fig.tight_layout()
    fig.savefig(path)
