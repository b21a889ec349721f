"""
Self-contained SVG line plot of the diameter ratio against log n: the
per-n maximum with markers and the per-n median as a dashed line.
"""
from typing import Dict, List, Sequence, Tuple
import logging
import math
import statistics
import xml.etree.ElementTree as ET
from schreierlab.experiments.sweep import ResultRow

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 400
MARGIN = 56
SVG_NS = "http://www.w3.org/2000/svg"


def ratio_series(rows: Sequence[ResultRow]) -> List[Tuple[float, float, float]]:
    """(log n, max ratio, median ratio) per n, increasing in n"""
    families = {row.family for row in rows}
    if len(families) > 1:
        raise ValueError(f"plot rows must share a family, got {sorted(families)}")
    by_n: Dict[int, List[float]] = {}
    for row in rows:
        if row.ratio is not None:
            by_n.setdefault(row.n, []).append(row.ratio)
    return [
        (math.log(n), max(ratios), statistics.median(ratios))
        for n, ratios in sorted(by_n.items())
    ]


def _scale(series: List[Tuple[float, float, float]]):
    xs = [x for x, _, _ in series]
    x_low, x_high = min(xs), max(xs)
    y_high = max(max(top for _, top, _ in series), 1.0)
    inner_w = WIDTH - 2 * MARGIN
    inner_h = HEIGHT - 2 * MARGIN

    def to_x(x: float) -> float:
        if x_high == x_low:
            return MARGIN + inner_w / 2
        return MARGIN + (x - x_low) / (x_high - x_low) * inner_w

    def to_y(y: float) -> float:
        return HEIGHT - MARGIN - y / y_high * inner_h

    return to_x, to_y, y_high


def _points(coords) -> str:
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in coords)


def render_svg(rows: Sequence[ResultRow]) -> str:
    series = ratio_series(rows)
    family = rows[0].family if rows else ""
    svg = ET.Element("svg", xmlns=SVG_NS, width=str(WIDTH), height=str(HEIGHT),
                     viewBox=f"0 0 {WIDTH} {HEIGHT}")
    ET.SubElement(svg, "rect", x="0", y="0", width=str(WIDTH), height=str(HEIGHT), fill="white")
    title = ET.SubElement(svg, "text", x=str(WIDTH // 2), y=str(MARGIN // 2), attrib={"text-anchor": "middle"})
    title.text = f"{family}: diameter / (log n / log k)"

    axis = {"stroke": "black", "stroke-width": "1"}
    ET.SubElement(svg, "line", x1=str(MARGIN), y1=str(HEIGHT - MARGIN),
                  x2=str(WIDTH - MARGIN), y2=str(HEIGHT - MARGIN), attrib=axis)
    ET.SubElement(svg, "line", x1=str(MARGIN), y1=str(MARGIN),
                  x2=str(MARGIN), y2=str(HEIGHT - MARGIN), attrib=axis)
    x_label = ET.SubElement(svg, "text", x=str(WIDTH // 2), y=str(HEIGHT - MARGIN // 4),
                            attrib={"text-anchor": "middle"})
    x_label.text = "log n"

    if not series:
        logger.warning("No connected rows to plot for %s", family)
        return _serialize(svg)

    to_x, to_y, y_high = _scale(series)
    y_label = ET.SubElement(svg, "text", x=str(MARGIN - 8), y=f"{to_y(y_high):.2f}", attrib={"text-anchor": "end"})
    y_label.text = f"{y_high:.2f}"
    for x, _, _ in series:
        tick = ET.SubElement(svg, "text", x=f"{to_x(x):.2f}", y=str(HEIGHT - MARGIN + 16),
                             attrib={"text-anchor": "middle", "font-size": "10"})
        tick.text = f"{x:.2f}"

    maxima = [(to_x(x), to_y(top)) for x, top, _ in series]
    medians = [(to_x(x), to_y(mid)) for x, _, mid in series]
    ET.SubElement(svg, "polyline", points=_points(maxima), fill="none",
                  attrib={"stroke": "#c0392b", "stroke-width": "2", "class": "max"})
    ET.SubElement(svg, "polyline", points=_points(medians), fill="none",
                  attrib={"stroke": "#2c3e50", "stroke-width": "2", "stroke-dasharray": "6,4", "class": "median"})
    for cx, cy in maxima:
        ET.SubElement(svg, "circle", cx=f"{cx:.2f}", cy=f"{cy:.2f}", r="4", fill="#c0392b")
    return _serialize(svg)


def _serialize(svg: ET.Element) -> str:
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def emit_plot(rows: Sequence[ResultRow], path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(render_svg(rows))
    logger.info("Wrote plot of %d rows to %s", len(rows), path)
