"""SVG and TikZ pictures of a diagram, drawn in matrix convention (row 1 on top)."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .diagram import SkewDiagram, closure, edge_components, perimeter_nw, perimeter_se
from .errors import CellOutsideDiagram, UnknownOverlay

CELL = 32
MARGIN = 28
PALETTE = ("#cfe3f7", "#f7dccf", "#d8f0d2", "#efe0f5", "#f5f0c8", "#d2eeee")


@dataclass
class RenderOptions:
    perimeter: bool = False
    components: bool = False
    closure_of: frozenset = frozenset()
    labels: bool = False

    @property
    def bare(self) -> bool:
        return not (self.perimeter or self.components or self.closure_of or self.labels)


def parse_cells(text: str) -> frozenset:
    """Cells written as ``r:c`` items separated by ``;`` (e.g. ``1:1;2:3``)."""
    out = set()
    for item in filter(None, (s.strip() for s in text.split(";"))):
        try:
            r, c = item.split(":")
            out.add((int(r), int(c)))
        except ValueError:
            raise UnknownOverlay(f"bad cell {item!r}; expected row:col") from None
    return frozenset(out)


def parse_overlays(overlays) -> RenderOptions:
    """Parse ``perimeter,components,labels,closure=1:1;2:2`` (a string or list of items)."""
    items = overlays.split(",") if isinstance(overlays, str) else list(overlays)
    opts = RenderOptions()
    for raw in items:
        item = raw.strip()
        if not item:
            continue
        if item == "perimeter":
            opts.perimeter = True
        elif item == "components":
            opts.components = True
        elif item in ("labels", "grid"):
            opts.labels = True
        elif item.startswith("closure="):
            opts.closure_of = parse_cells(item[len("closure="):])
        else:
            raise UnknownOverlay(f"unknown overlay {item!r}")
    return opts


@dataclass
class _Scene:
    fills: dict = field(default_factory=dict)
    hatched: frozenset = frozenset()
    nw: frozenset = frozenset()
    se: frozenset = frozenset()


def _scene(D: SkewDiagram, opts: RenderOptions) -> _Scene:
    sc = _Scene()
    if opts.components:
        for k, comp in enumerate(edge_components(D)):
            for c in comp:
                sc.fills[c] = PALETTE[k % len(PALETTE)]
    if opts.closure_of:
        for c in opts.closure_of:
            if c not in D.cells:
                raise CellOutsideDiagram(c)
        sc.hatched = closure(D, opts.closure_of)
    if opts.perimeter:
        sc.nw, sc.se = perimeter_nw(D), perimeter_se(D)
    return sc


def render_svg(D: SkewDiagram, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    sc = _scene(D, opts)
    off = MARGIN if opts.labels else 4
    width = off + D.b * CELL + 4
    height = off + D.a * CELL + 4
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "width": str(width),
        "height": str(height),
        "viewBox": f"0 0 {width} {height}",
    })
    defs = ET.SubElement(svg, "defs")
    pat = ET.SubElement(defs, "pattern", {
        "id": "hatch", "width": "6", "height": "6",
        "patternUnits": "userSpaceOnUse", "patternTransform": "rotate(45)",
    })
    ET.SubElement(pat, "line", {"x1": "0", "y1": "0", "x2": "0", "y2": "6", "stroke": "#777", "stroke-width": "2"})
    for r, c in D.sorted_cells():
        x, y = off + (c - 1) * CELL, off + (r - 1) * CELL
        ET.SubElement(svg, "rect", {
            "class": "cell", "x": str(x), "y": str(y), "width": str(CELL), "height": str(CELL),
            "fill": sc.fills.get((r, c), "#ffffff"), "stroke": "#000", "stroke-width": "1",
        })
        if (r, c) in sc.hatched:
            ET.SubElement(svg, "rect", {
                "class": "closure", "x": str(x), "y": str(y), "width": str(CELL), "height": str(CELL),
                "fill": "url(#hatch)", "stroke": "none",
            })
        cx, cy = x + CELL / 2, y + CELL / 2
        if (r, c) in sc.nw:
            h = CELL * 0.3
            pts = f"{cx},{cy - h} {cx - h},{cy + h * 0.8} {cx + h},{cy + h * 0.8}"
            ET.SubElement(svg, "polygon", {"class": "marker-nw", "points": pts, "fill": "none", "stroke": "#000"})
        if (r, c) in sc.se:
            h = CELL * 0.25
            g = ET.SubElement(svg, "g", {"class": "marker-se", "stroke": "#000", "stroke-width": "1.5"})
            ET.SubElement(g, "line", {"x1": str(cx - h), "y1": str(cy - h), "x2": str(cx + h), "y2": str(cy + h)})
            ET.SubElement(g, "line", {"x1": str(cx - h), "y1": str(cy + h), "x2": str(cx + h), "y2": str(cy - h)})
    if opts.labels:
        for r in range(1, D.a + 1):
            t = ET.SubElement(svg, "text", {
                "class": "row-label", "x": str(off - 8), "y": str(off + (r - 0.5) * CELL + 4),
                "text-anchor": "end", "font-size": "12",
            })
            t.text = str(r)
        for c in range(1, D.b + 1):
            t = ET.SubElement(svg, "text", {
                "class": "col-label", "x": str(off + (c - 0.5) * CELL), "y": str(off - 8),
                "text-anchor": "middle", "font-size": "12",
            })
            t.text = str(c)
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def render_tikz(D: SkewDiagram, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    sc = _scene(D, opts)
    colors = {fill: f"comp{k}" for k, fill in enumerate(dict.fromkeys(sc.fills.values()))}
    lines = []
    for fill, name in colors.items():
        lines.append(f"\\definecolor{{{name}}}{{HTML}}{{{fill[1:].upper()}}}")
    lines.append("\\begin{tikzpicture}[x=1em,y=-1em]")
    for r, c in D.sorted_cells():
        x0, y0 = c - 1, r - 1
        style = []
        if (r, c) in sc.fills:
            style.append(f"fill={colors[sc.fills[(r, c)]]}")
        opt = f"[{','.join(style)}]" if style else ""
        lines.append(f"  \\draw{opt} ({x0},{y0}) rectangle ({x0 + 1},{y0 + 1});")
        if (r, c) in sc.hatched:
            lines.append(f"  \\fill[pattern=north east lines] ({x0},{y0}) rectangle ({x0 + 1},{y0 + 1});")
        mid = f"({x0 + 0.5},{y0 + 0.5})"
        if (r, c) in sc.nw:
            lines.append(f"  \\node at {mid} {{$\\triangle$}};")
        if (r, c) in sc.se:
            lines.append(f"  \\node at {mid} {{$\\times$}};")
    if opts.labels:
        for r in range(1, D.a + 1):
            lines.append(f"  \\node[left] at (0,{r - 0.5}) {{\\scriptsize {r}}};")
        for c in range(1, D.b + 1):
            lines.append(f"  \\node[above] at ({c - 0.5},0) {{\\scriptsize {c}}};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render(D: SkewDiagram, fmt: str = "svg", opts: RenderOptions | None = None) -> str:
    if fmt == "svg":
        return render_svg(D, opts)
    if fmt == "tikz":
        return render_tikz(D, opts)
    raise ValueError(f"unknown render format {fmt!r}")
