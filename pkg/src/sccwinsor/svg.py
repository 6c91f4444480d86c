"""Hand-written SVG charts: no plotting dependency, byte-deterministic output.

Presentation only; numeric outputs live in the CSV files.
"""
from __future__ import annotations

import math

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 80
MARGIN_RIGHT = 24
MARGIN_TOP = 40
MARGIN_BOTTOM = 56
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _f(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    step = (hi - lo) / n
    return [lo + i * step for i in range(n + 1)]


def _tick_label(x: float) -> str:
    return format(x, ".4g")


class _Frame:
    """Linear data-to-pixel mapping with a drawn axis frame."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        if x_hi == x_lo:
            x_hi = x_lo + 1.0
        if y_hi == y_lo:
            y_hi = y_lo + 1.0
        pad_x = 0.02 * (x_hi - x_lo)
        pad_y = 0.05 * (y_hi - y_lo)
        self.x_lo, self.x_hi = x_lo - pad_x, x_hi + pad_x
        self.y_lo, self.y_hi = y_lo - pad_y, y_hi + pad_y

    def px(self, x: float) -> float:
        span = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        return MARGIN_LEFT + (x - self.x_lo) / (self.x_hi - self.x_lo) * span

    def py(self, y: float) -> float:
        span = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
        return HEIGHT - MARGIN_BOTTOM - (y - self.y_lo) / (self.y_hi - self.y_lo) * span

    def axes(self, title: str, x_label: str, y_label: str) -> list[str]:
        parts = [
            f'<rect x="{_f(MARGIN_LEFT)}" y="{_f(MARGIN_TOP)}" '
            f'width="{_f(WIDTH - MARGIN_LEFT - MARGIN_RIGHT)}" '
            f'height="{_f(HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)}" '
            'fill="none" stroke="#333333" stroke-width="1"/>',
            f'<text x="{_f(WIDTH / 2)}" y="24" text-anchor="middle" '
            f'font-size="16">{title}</text>',
            f'<text x="{_f(WIDTH / 2)}" y="{_f(HEIGHT - 12)}" text-anchor="middle" '
            f'font-size="12">{x_label}</text>',
            f'<text x="16" y="{_f(HEIGHT / 2)}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 16 {_f(HEIGHT / 2)})">{y_label}</text>',
        ]
        for tick in _ticks(self.x_lo, self.x_hi):
            x = self.px(tick)
            parts.append(
                f'<line x1="{_f(x)}" y1="{_f(HEIGHT - MARGIN_BOTTOM)}" '
                f'x2="{_f(x)}" y2="{_f(HEIGHT - MARGIN_BOTTOM + 5)}" stroke="#333333"/>'
            )
            parts.append(
                f'<text x="{_f(x)}" y="{_f(HEIGHT - MARGIN_BOTTOM + 18)}" '
                f'text-anchor="middle" font-size="10">{_tick_label(tick)}</text>'
            )
        for tick in _ticks(self.y_lo, self.y_hi):
            y = self.py(tick)
            parts.append(
                f'<line x1="{_f(MARGIN_LEFT - 5)}" y1="{_f(y)}" '
                f'x2="{_f(MARGIN_LEFT)}" y2="{_f(y)}" stroke="#333333"/>'
            )
            parts.append(
                f'<text x="{_f(MARGIN_LEFT - 8)}" y="{_f(y + 3)}" '
                f'text-anchor="end" font-size="10">{_tick_label(tick)}</text>'
            )
        return parts


def _document(parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">\n{body}\n</svg>\n'
    )


def line_chart(
    series: dict[str, list[tuple[float, float]]],
    title: str,
    x_label: str,
    y_label: str,
    step: bool = False,
) -> str:
    """Multi-series line (or step) chart; series keyed by legend label."""
    points = [pt for pts in series.values() for pt in pts]
    if not points:
        raise ValueError("nothing to plot")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    parts = frame.axes(title, x_label, y_label)
    for i, (label, pts) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        coords = []
        prev = None
        for x, y in pts:
            px, py = frame.px(x), frame.py(y)
            if step and prev is not None:
                coords.append(f"{_f(px)},{_f(prev)}")
            coords.append(f"{_f(px)},{_f(py)}")
            prev = py
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{" ".join(coords)}"/>'
        )
        legend_y = MARGIN_TOP + 16 + 16 * i
        parts.append(
            f'<line x1="{_f(WIDTH - 180)}" y1="{_f(legend_y - 4)}" '
            f'x2="{_f(WIDTH - 156)}" y2="{_f(legend_y - 4)}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{_f(WIDTH - 150)}" y="{_f(legend_y)}" font-size="11">{label}</text>'
        )
    return _document(parts)


def bar_chart(labels: list[str], values: list[float], title: str, y_label: str) -> str:
    """Labelled bar chart with bars anchored at zero."""
    if not labels:
        raise ValueError("nothing to plot")
    y_lo = min(0.0, min(values))
    y_hi = max(0.0, max(values))
    frame = _Frame(0.0, float(len(labels)), y_lo, y_hi)
    parts = frame.axes(title, "", y_label)
    baseline = frame.py(0.0)
    for i, (label, value) in enumerate(zip(labels, values)):
        x0 = frame.px(i + 0.15)
        x1 = frame.px(i + 0.85)
        y = frame.py(value)
        top = min(y, baseline)
        height = abs(baseline - y)
        parts.append(
            f'<rect x="{_f(x0)}" y="{_f(top)}" width="{_f(x1 - x0)}" '
            f'height="{_f(height)}" fill="{PALETTE[0]}"/>'
        )
        parts.append(
            f'<text x="{_f((x0 + x1) / 2)}" y="{_f(HEIGHT - MARGIN_BOTTOM + 30)}" '
            f'text-anchor="middle" font-size="10">{label}</text>'
        )
    return _document(parts)


def log_bar_chart(labels: list[str], values: list[float], title: str, y_label: str) -> str:
    """Bar chart with log-scaled heights for spread-out positive shares."""
    floor = 1e-4
    transformed = [math.log10(max(v, floor) / floor) for v in values]
    return bar_chart(labels, transformed, title, f"{y_label} (log scale, decades above {floor:g})")
