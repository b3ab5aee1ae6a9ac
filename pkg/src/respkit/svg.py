"""Minimal deterministic SVG heatmaps for 2D surfaces.

Convenience export only: fixed blue-white-red diverging map, labeled axes,
no external plotting dependency, byte-stable output for identical inputs.
"""

from __future__ import annotations

import numpy as np

_SIZE = 640
_MARGIN = 70


def _diverging_color(x: float) -> str:
    """x in [-1, 1] -> blue-white-red hex color."""
    x = max(-1.0, min(1.0, x))
    if x >= 0.0:
        r, g, b = 255, round(255 * (1 - x)), round(255 * (1 - x))
    else:
        r, g, b = round(255 * (1 + x)), round(255 * (1 + x)), 255
    return f"#{r:02x}{g:02x}{b:02x}"


def _ticks(lo: float, hi: float, count: int = 5):
    return np.linspace(lo, hi, count)


def heatmap_svg(values: np.ndarray, x_axis: np.ndarray, y_axis: np.ndarray,
                title: str, x_label: str, y_label: str,
                max_cells: int = 160) -> str:
    """Render real matrix values[ix, iy] over (x_axis, y_axis) as SVG text."""
    vals = np.asarray(values, dtype=float)
    stride_x = max(1, vals.shape[0] // max_cells)
    stride_y = max(1, vals.shape[1] // max_cells)
    vals = vals[::stride_x, ::stride_y]
    xs = np.asarray(x_axis)[::stride_x]
    ys = np.asarray(y_axis)[::stride_y]
    vmax = np.abs(vals).max() or 1.0

    plot = _SIZE - 2 * _MARGIN
    cw = plot / vals.shape[0]
    ch = plot / vals.shape[1]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<text x="{_SIZE / 2:.1f}" y="30" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]
    for i in range(vals.shape[0]):
        for j in range(vals.shape[1]):
            color = _diverging_color(vals[i, j] / vmax)
            if color == "#ffffff":
                continue
            x = _MARGIN + i * cw
            y = _SIZE - _MARGIN - (j + 1) * ch
            parts.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.5:.2f}" '
                         f'height="{ch + 0.5:.2f}" fill="{color}"/>')
    parts.append(f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{plot}" height="{plot}" '
                 'fill="none" stroke="black"/>')
    for tx in _ticks(xs[0], xs[-1]):
        px = _MARGIN + (tx - xs[0]) / (xs[-1] - xs[0]) * plot
        parts.append(f'<line x1="{px:.1f}" y1="{_SIZE - _MARGIN}" x2="{px:.1f}" '
                     f'y2="{_SIZE - _MARGIN + 6}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{_SIZE - _MARGIN + 22}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{tx:.0f}</text>')
    for ty in _ticks(ys[0], ys[-1]):
        py = _SIZE - _MARGIN - (ty - ys[0]) / (ys[-1] - ys[0]) * plot
        parts.append(f'<line x1="{_MARGIN - 6}" y1="{py:.1f}" x2="{_MARGIN}" '
                     f'y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_MARGIN - 10}" y="{py + 4:.1f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{ty:.0f}</text>')
    parts.append(f'<text x="{_SIZE / 2:.1f}" y="{_SIZE - 20}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="13">{x_label}</text>')
    parts.append(f'<text x="20" y="{_SIZE / 2:.1f}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="13" '
                 f'transform="rotate(-90 20 {_SIZE / 2:.1f})">{y_label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
