"""Static SVG rendering of experiment histograms.

Plain hand-written SVG with the data table embedded as text, so outputs are
self-contained files that need no display server and are byte-stable for a
fixed summary.
"""

from __future__ import annotations

from .models import ExperimentSummary

_WIDTH = 640
_HEIGHT = 360
_MARGIN = 50


def histogram_svg(summary: ExperimentSummary) -> str:
    bars = summary.histogram
    peak = max(count for _, _, count in bars) or 1
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN
    bar_w = plot_w / len(bars)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT + 16 * (len(bars) + 2)}">',
        f'<text x="{_MARGIN}" y="20" font-size="14">{summary.statistic}: '
        f"{summary.trials} trials, mean {summary.mean:.6f}, std {summary.std:.6f}</text>",
    ]
    for i, (lo, hi, count) in enumerate(bars):
        h = plot_h * count / peak
        x = _MARGIN + i * bar_w
        y = _MARGIN + plot_h - h
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" height="{h:.2f}" '
            'fill="#4878a8" stroke="white"/>'
        )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_MARGIN + plot_h}" x2="{_MARGIN + plot_w}" '
        f'y2="{_MARGIN + plot_h}" stroke="black"/>'
    )
    parts.append(
        f'<text x="{_MARGIN}" y="{_MARGIN + plot_h + 16}" font-size="11">'
        f"{summary.min:.6f}</text>"
    )
    parts.append(
        f'<text x="{_MARGIN + plot_w - 60}" y="{_MARGIN + plot_h + 16}" font-size="11">'
        f"{summary.max:.6f}</text>"
    )
    y = _HEIGHT + 8
    parts.append(f'<text x="{_MARGIN}" y="{y}" font-size="11">bucket_lo,bucket_hi,count</text>')
    for lo, hi, count in bars:
        y += 16
        parts.append(f'<text x="{_MARGIN}" y="{y}" font-size="11">{lo:.6f},{hi:.6f},{count}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def histogram_csv(summary: ExperimentSummary) -> str:
    lines = ["bucket_lo,bucket_hi,count"]
    for lo, hi, count in summary.histogram:
        lines.append(f"{lo!r},{hi!r},{count}")
    return "\n".join(lines) + "\n"
