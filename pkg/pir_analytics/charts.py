"""
SVG trajectory charts
Self-contained line charts of an index over a player's seasons
"""

from html import escape
from pathlib import Path
from typing import List, Tuple, Union

import structlog
from airium import Airium

from .models import TrajectorySeries

logger = structlog.get_logger()

WIDTH = 640
HEIGHT = 360
MARGIN_LEFT = 64
MARGIN_RIGHT = 24
MARGIN_TOP = 32
MARGIN_BOTTOM = 72
Y_TICKS = 5

LINE_COLOR = "#1f77b4"
EXCLUDED_COLOR = "#d62728"
AXIS_COLOR = "#333333"


def _fmt(v: float) -> str:
    """Fixed precision keeps the output byte-stable"""
    return f"{v:.2f}"


def _value_range(series: TrajectorySeries) -> Tuple[float, float]:
    values = [p.value for p in series.points]
    low = series.lower if series.lower is not None else min(values)
    high = series.upper if series.upper is not None else max(values)
    if high == low:
        low, high = low - 0.5, high + 0.5
    return low, high


def plot_points(series: TrajectorySeries) -> List[Tuple[float, float]]:
    """Pixel coordinates of every season, y axis pointing up"""
    low, high = _value_range(series)
    inner_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    inner_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    n = len(series.points)
    step = inner_w / (n - 1) if n > 1 else 0.0
    points = []
    for i, p in enumerate(series.points):
        x = MARGIN_LEFT + (i * step if n > 1 else inner_w / 2)
        y = MARGIN_TOP + inner_h * (1 - (p.value - low) / (high - low))
        points.append((x, y))
    return points


def render_svg(series: TrajectorySeries) -> str:
    """SVG document for a trajectory; identical input gives identical bytes"""
    low, high = _value_range(series)
    points = plot_points(series)
    bottom = HEIGHT - MARGIN_BOTTOM
    right = WIDTH - MARGIN_RIGHT
    title = f"{series.player} {series.kind.label} ({series.phase.value}, {series.scope.value})"

    a = Airium()
    with a.svg(xmlns="http://www.w3.org/2000/svg", width=str(WIDTH), height=str(HEIGHT),
               viewBox=f"0 0 {WIDTH} {HEIGHT}"):
        a.title(_t=escape(title))
        a.rect(x="0", y="0", width=str(WIDTH), height=str(HEIGHT), fill="#ffffff")
        a.text(_t=escape(title), x=_fmt(WIDTH / 2), y="20", **{"text-anchor": "middle", "font-size": "14"})

        # Axes
        a.line(x1=str(MARGIN_LEFT), y1=str(MARGIN_TOP), x2=str(MARGIN_LEFT), y2=str(bottom), stroke=AXIS_COLOR)
        a.line(x1=str(MARGIN_LEFT), y1=str(bottom), x2=str(right), y2=str(bottom), stroke=AXIS_COLOR)

        inner_h = bottom - MARGIN_TOP
        for i in range(Y_TICKS + 1):
            value = low + (high - low) * i / Y_TICKS
            y = bottom - inner_h * i / Y_TICKS
            a.line(x1=str(MARGIN_LEFT - 4), y1=_fmt(y), x2=str(MARGIN_LEFT), y2=_fmt(y), stroke=AXIS_COLOR)
            a.text(_t=f"{value:.3g}", x=str(MARGIN_LEFT - 8), y=_fmt(y + 4),
                   **{"text-anchor": "end", "font-size": "10"})

        for (x, _), p in zip(points, series.points):
            a.text(_t=escape(p.season), x=_fmt(x), y=str(bottom + 14),
                   transform=f"rotate(45 {_fmt(x)} {bottom + 14})", **{"font-size": "10"})

        a.text(_t="Season", x=_fmt((MARGIN_LEFT + right) / 2), y=str(HEIGHT - 8),
               **{"text-anchor": "middle", "font-size": "12"})
        y_mid = (MARGIN_TOP + bottom) / 2
        a.text(_t=escape(series.kind.label), x="16", y=_fmt(y_mid),
               transform=f"rotate(-90 16 {_fmt(y_mid)})", **{"text-anchor": "middle", "font-size": "12"})

        a.polyline(points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points),
                   fill="none", stroke=LINE_COLOR, **{"stroke-width": "2"})
        for (x, y), p in zip(points, series.points):
            a.circle(cx=_fmt(x), cy=_fmt(y), r="3", fill=EXCLUDED_COLOR if p.excluded else LINE_COLOR)
    return str(a)


def write_svg(series: TrajectorySeries, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(render_svg(series), encoding="utf-8")
    logger.info("Wrote trajectory plot", path=str(path), player=series.player, points=len(series.points))
    return path
