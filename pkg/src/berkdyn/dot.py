"""Deterministic DOT export of skeletons with measure decorations."""

from __future__ import annotations

from typing import Sequence

from .trees import Measure, Skeleton

_MEASURE_COLORS = ("firebrick", "royalblue", "forestgreen", "darkorange", "purple")


def _type_tag(v) -> str:
    if v.infinite:
        return "infinity"
    return f"type {v.type_number()}"


def export_dot(
    skel: Skeleton,
    measures: Sequence[Measure] = (),
    names: Sequence[str] | None = None,
) -> str:
    """Render a skeleton as an undirected DOT graph.

    Vertices are labeled by their canonical point names with a type
    annotation; edge labels carry the length; each measure adds a decoration
    layer with its own style tag.  Output is stable across runs.
    """
    if names is None:
        names = [f"μ{i + 1}" if len(measures) > 1 else "μ" for i in range(len(measures))]
    lines = ["graph skeleton {", '  node [shape="circle", fontsize=10];']
    verts = sorted(skel.vertices, key=lambda v: v.label())
    for v in verts:
        label_parts = [v.label(), _type_tag(v)]
        attrs = []
        for k, mu in enumerate(measures):
            w = mu.mass_at(v)
            if w != 0:
                label_parts.append(f"{names[k]}: {w}")
                color = _MEASURE_COLORS[k % len(_MEASURE_COLORS)]
                attrs.append(f'color="{color}"')
                attrs.append(f'decoration{k + 1}="{color}"')
        joined = "\\n".join(label_parts)
        extra = (", " + ", ".join(attrs)) if attrs else ""
        lines.append(f'  "{v.label()}" [label="{joined}"{extra}];')
    edge_rows = []
    for child, par in skel.edges():
        length = skel.edge_length((child, par))
        edge_rows.append((child.label(), par.label(), str(length)))
    edge_rows.sort()
    for a, b, length in edge_rows:
        lines.append(f'  "{a}" -- "{b}" [label="{length}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
