"""Matplotlib renderings of skeletons, measures and escape-rate profiles.

Figures are a convenience layer for reports: every plotted number is a
float cast of an exact rational and is non-authoritative; the JSON and DOT
outputs stay canonical.  Infinite coordinates (classical leaves, INFINITY)
are clipped to a margin and annotated.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import PolyFamily, green_value
from .points import BerkPoint
from .polynomials import Poly
from .trees import Measure, Skeleton

_PNG_META = {"Software": "berkdyn"}
_MEASURE_COLORS = ("firebrick", "royalblue", "forestgreen", "darkorange", "purple")


def _layout(skel: Skeleton) -> dict[BerkPoint, tuple[float, float]]:
    finite_rhos = [
        float(v.logr.as_fraction())
        for v in skel.vertices
        if not v.infinite and not v.is_type1
    ]
    lo = min(finite_rhos, default=0.0) - 1.5
    hi = max(finite_rhos, default=0.0) + 1.5

    def ycoord(v: BerkPoint) -> float:
        if v.infinite:
            return hi
        if v.is_type1:
            return lo
        return float(v.logr.as_fraction())

    pos: dict[BerkPoint, tuple[float, float]] = {}
    next_x = [0.0]

    def place(v: BerkPoint) -> float:
        kids = skel.children[v]
        if not kids:
            x = next_x[0]
            next_x[0] += 1.0
        else:
            x = sum(place(k) for k in kids) / len(kids)
        pos[v] = (x, ycoord(v))
        return x

    if skel.top is not None:
        place(skel.top)
    for v in skel.vertices:
        if v not in pos:
            place(v)
    return pos


def skeleton_figure(
    skel: Skeleton,
    measures: Sequence[Measure] = (),
    names: Sequence[str] | None = None,
    title: str = "skeleton",
    path: str | Path = "skeleton.png",
) -> Path:
    """Draw the tree with vertices at their log-radius heights."""
    if names is None:
        names = [f"μ{i + 1}" for i in range(len(measures))]
    pos = _layout(skel)
    fig, ax = plt.subplots(figsize=(7, 6))
    for child, par in skel.edges():
        (x1, y1), (x2, y2) = pos[child], pos[par]
        ax.plot([x1, x2], [y1, y2], color="0.4", lw=1.2, zorder=1)
    xs = [pos[v][0] for v in skel.vertices]
    ys = [pos[v][1] for v in skel.vertices]
    ax.scatter(xs, ys, s=28, color="black", zorder=2)
    for v in skel.vertices:
        x, y = pos[v]
        ax.annotate(
            v.label(), (x, y), textcoords="offset points", xytext=(6, 4), fontsize=9
        )
    for k, mu in enumerate(measures):
        color = _MEASURE_COLORS[k % len(_MEASURE_COLORS)]
        for q, w in mu.atoms:
            anchor = q if q in pos else None
            if anchor is None:
                continue
            x, y = pos[anchor]
            ax.scatter(
                [x], [y], s=200 + 400 * abs(float(w)), facecolors="none",
                edgecolors=color, zorder=3,
            )
            ax.annotate(
                f"{names[k]}={w}",
                (x, y),
                textcoords="offset points",
                xytext=(6, -12 - 11 * k),
                fontsize=9,
                color=color,
            )
    ax.set_title(title)
    ax.set_ylabel("log-radius (base p)")
    ax.set_xticks([])
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def green_profile_figure(
    fam: PolyFamily,
    marked: Poly,
    ns: Sequence[int],
    rho_min: Fraction = Fraction(-2),
    rho_max: Fraction = Fraction(3),
    steps: int = 60,
    boundary_rhos: Sequence[Fraction] = (),
    title: str = "escape-rate profile",
    path: str | Path = "green_profile.png",
) -> Path:
    """Plot the escape-rate approximants along the axis through 0."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    span = rho_max - rho_min
    grid = [rho_min + span * Fraction(k, steps) for k in range(steps + 1)]
    for n in ns:
        values = []
        for rho in grid:
            point = BerkPoint.disc(fam.ctx, 0, rho)
            values.append(float(green_value(fam, marked, n, point)))
        ax.plot(
            [float(r) for r in grid],
            values,
            label=f"n={n}",
            lw=1.4,
            alpha=0.85,
        )
    for rho in boundary_rhos:
        ax.axvline(float(rho), color="firebrick", ls="--", lw=1.0)
    ax.set_xlabel("log-radius of the parameter disc (base p)")
    ax.set_ylabel("escape rate (base-p log units)")
    ax.set_title(title + "  [floats: non-authoritative rendering]")
    ax.legend(loc="upper left", fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path
