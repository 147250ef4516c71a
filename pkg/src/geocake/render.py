"""SVG pictures of cakes, measures, pools and allocations."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon, Rectangle  # noqa: E402

from .geometry import Rect, RectilinearRegion, Staircase, is_inf  # noqa: E402

PIECE_COLOURS = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1",
                 "#ff9da7", "#9c755f", "#bab0ac")

plt.rcParams["svg.hashsalt"] = "geocake"


def _finite_extent(rects: Sequence[Rect], points: Sequence[tuple] = ()) -> Optional[tuple]:
    xs = [v for r in rects for v in (r.x_min, r.x_max) if not is_inf(v)] + [x for x, _ in points]
    ys = [v for r in rects for v in (r.y_min, r.y_max) if not is_inf(v)] + [y for _, y in points]
    if not xs or not ys:
        return None
    return min(xs), min(ys), max(xs), max(ys)


def viewport(cake, measures=(), pieces=(), pools=()) -> Rect:
    """Drawing window: the bounded cake, or supports and finite geometry plus a 10% margin."""
    if isinstance(cake, Rect) and cake.is_finite:
        box = (cake.x_min, cake.y_min, cake.x_max, cake.y_max)
    elif isinstance(cake, RectilinearRegion):
        b = cake.bbox
        box = (b.x_min, b.y_min, b.x_max, b.y_max)
    else:
        rects = [r for m in measures for r, d in m.cells if d > 0]
        rects += [p for p in pieces if p is not None] + list(pools)
        points = list(cake.corners) if isinstance(cake, Staircase) else []
        box = _finite_extent(rects, points) or (-1, -1, 1, 1)
    x0, y0, x1, y1 = box
    m = max(x1 - x0, y1 - y0, Fraction(1)) / 10
    return Rect(x0 - m, y0 - m, x1 + m, y1 + m)


def _clip(r: Rect, view: Rect) -> tuple:
    c = Rect(max(r.x_min, view.x_min), max(r.y_min, view.y_min),
             min(r.x_max, view.x_max), min(r.y_max, view.y_max))
    return c, not r.is_finite


def _cake_outline(ax, cake, view: Rect) -> None:
    style = dict(fill=False, edgecolor="black", linewidth=1.2, gid="cake")
    if isinstance(cake, Rect):
        c, _ = _clip(cake, view)
        ax.add_patch(Rectangle((float(c.x_min), float(c.y_min)), float(c.width), float(c.height), **style))
    elif isinstance(cake, Staircase):
        pts = [(float(view.x_max), float(cake.corners[0][1]))]
        for (x, y), nxt in zip(cake.corners, list(cake.corners[1:]) + [None]):
            pts.append((float(x), float(y)))
            pts.append((float(x), float(nxt[1]) if nxt else float(view.y_max)))
        ax.add_patch(Polygon(pts, closed=False, **style))
    elif isinstance(cake, RectilinearRegion):
        for i, r in enumerate(cake.rects):
            ax.add_patch(Rectangle((float(r.x_min), float(r.y_min)), float(r.width), float(r.height),
                                   fill=False, edgecolor="black", linewidth=1.2,
                                   gid="cake" if i == 0 else f"cake-{i}"))


def _draw_cells(ax, measures, view: Rect) -> None:
    peak = max((float(d) for m in measures for _, d in m.cells), default=1.0) or 1.0
    for i, m in enumerate(measures):
        colour = PIECE_COLOURS[i % len(PIECE_COLOURS)]
        for j, (r, d) in enumerate(m.cells):
            if not d:
                continue
            c, _ = _clip(r, view)
            ax.add_patch(Rectangle((float(c.x_min), float(c.y_min)), float(c.width), float(c.height),
                                   facecolor=colour, edgecolor="none",
                                   alpha=0.08 + 0.25 * float(d) / peak, gid=f"cell-{i}-{j}"))


def _finish(fig, ax, view: Rect, path: str, title: str) -> None:
    ax.set_xlim(float(view.x_min), float(view.x_max))
    ax.set_ylim(float(view.y_min), float(view.y_max))
    ax.set_aspect("equal")
    ax.set_title(title, fontsize=9)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def render_allocation(path: str, cake, pieces: Sequence, measures=(), title: str = "") -> None:
    """Cake outline, faint value cells and one labelled rectangle per piece."""
    view = viewport(cake, measures, pieces)
    fig, ax = plt.subplots(figsize=(5, 5))
    _draw_cells(ax, measures, view)
    _cake_outline(ax, cake, view)
    for i, p in enumerate(pieces):
        if p is None:
            continue
        c, unbounded = _clip(p, view)
        colour = PIECE_COLOURS[i % len(PIECE_COLOURS)]
        ax.add_patch(Rectangle((float(c.x_min), float(c.y_min)), float(c.width), float(c.height),
                               facecolor=colour, alpha=0.45, edgecolor=colour, linewidth=1.0,
                               hatch="//" if unbounded else None, gid=f"piece-{i}"))
        ax.text(float(c.x_min + c.width / 2), float(c.y_min + c.height / 2), str(i),
                ha="center", va="center", fontsize=8)
    _finish(fig, ax, view, path, title)


def render_pools(path: str, cake, pools: Sequence[Rect], title: str = "") -> None:
    """Cake outline and the pools, each slightly inflated so tiny ones stay visible."""
    view = viewport(cake, pools=pools)
    fig, ax = plt.subplots(figsize=(5, 5))
    _cake_outline(ax, cake, view)
    dot = float(view.width) / 150
    for i, r in enumerate(pools):
        w = max(float(r.width), dot)
        ax.add_patch(Rectangle((float(r.x_min), float(r.y_min)), w, w, facecolor="#4e79a7",
                               edgecolor="#1f3b5c", linewidth=0.5, gid=f"pool-{i}"))
    _finish(fig, ax, view, path, title)
