"""Standalone SVG diagnostics for curves, segmentations and schedules.

Dependency-free SVG 1.1 text with a fixed 960x540 viewbox, fixed color
palette, and fixed-precision coordinates: identical inputs always render
byte-identical files, so plots are diffable in tests.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError
from .types import SegmentationResult, SpfCurve, SyntheticTruth, WarpSchedule

WIDTH = 960
HEIGHT = 540
MARGIN_LEFT = 70
MARGIN_RIGHT = 30
MARGIN_TOP = 40
MARGIN_BOTTOM = 50

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf")
TRUTH_COLOR = "#777777"
SEGMENT_COLOR = "#333333"

PathLike = Union[str, Path]


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


class _Frame:
    """Maps data coordinates onto the fixed plot rectangle."""

    def __init__(self, x_max: float, y_max: float):
        self.x_max = x_max
        self.y_max = y_max
        self.left = MARGIN_LEFT
        self.right = WIDTH - MARGIN_RIGHT
        self.top = MARGIN_TOP
        self.bottom = HEIGHT - MARGIN_BOTTOM

    def x(self, value: float) -> float:
        return self.left + (value / self.x_max) * (self.right - self.left)

    def y(self, value: float) -> float:
        return self.bottom - (value / self.y_max) * (self.bottom - self.top)

    def polyline(self, xs, ys, color: str, dashed: bool = False, width: float = 1.5) -> str:
        points = " ".join(f"{self.x(float(a)):.3f},{self.y(float(b)):.3f}" for a, b in zip(xs, ys))
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        return (
            f'<polyline fill="none" stroke="{color}" stroke-width="{width:g}"{dash} '
            f'points="{points}"/>'
        )

    def axes(self, x_label: str, y_label: str, x_ticks: Sequence[float], y_ticks: Sequence[float]):
        parts = [
            f'<rect x="{self.left}" y="{self.top}" width="{self.right - self.left}" '
            f'height="{self.bottom - self.top}" fill="none" stroke="#000000"/>'
        ]
        for tick in x_ticks:
            px = self.x(tick)
            parts.append(
                f'<line x1="{px:.3f}" y1="{self.bottom}" x2="{px:.3f}" '
                f'y2="{self.bottom + 5}" stroke="#000000"/>'
            )
            parts.append(
                f'<text x="{px:.3f}" y="{self.bottom + 18}" text-anchor="middle" '
                f'font-size="11" font-family="monospace">{tick:g}</text>'
            )
        for tick in y_ticks:
            py = self.y(tick)
            parts.append(
                f'<line x1="{self.left - 5}" y1="{py:.3f}" x2="{self.left}" '
                f'y2="{py:.3f}" stroke="#000000"/>'
            )
            parts.append(
                f'<text x="{self.left - 8}" y="{py + 4:.3f}" text-anchor="end" '
                f'font-size="11" font-family="monospace">{tick:g}</text>'
            )
        parts.append(
            f'<text x="{(self.left + self.right) / 2:.3f}" y="{HEIGHT - 12}" '
            f'text-anchor="middle" font-size="12" font-family="monospace">{_escape(x_label)}</text>'
        )
        parts.append(
            f'<text x="18" y="{(self.top + self.bottom) / 2:.3f}" text-anchor="middle" '
            f'font-size="12" font-family="monospace" transform="rotate(-90 18 '
            f'{(self.top + self.bottom) / 2:.3f})">{_escape(y_label)}</text>'
        )
        return parts


def _legend(frame: _Frame, entries: Sequence[Tuple[str, str, bool]]) -> list:
    parts = []
    y = frame.top + 14
    for label, color, dashed in entries:
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        x0 = frame.left + 12
        parts.append(
            f'<line x1="{x0}" y1="{y - 4}" x2="{x0 + 26}" y2="{y - 4}" '
            f'stroke="{color}" stroke-width="2"{dash}/>'
        )
        parts.append(
            f'<text x="{x0 + 32}" y="{y}" font-size="11" '
            f'font-family="monospace">{_escape(label)}</text>'
        )
        y += 16
    return parts


def _document(body: list) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _ticks(maximum: float, count: int = 5) -> list:
    return [maximum * i / count for i in range(count + 1)]


def plot_spf(
    curves: Sequence[Tuple[str, SpfCurve]],
    out_path: PathLike,
    truth: Optional[SyntheticTruth] = None,
    segmentation: Optional[SegmentationResult] = None,
) -> None:
    """Render labeled normalized curves, optionally with ground truth and
    segment line fits (dashed) overlaid. All curves must share one length."""
    if not curves:
        raise DomainError("plot_spf needs at least one curve")
    t = curves[0][1].frame_count
    for _, curve in curves:
        if curve.frame_count != t:
            raise DomainError("all curves in one plot must have the same length")
    if truth is not None and truth.frame_count != t:
        raise DomainError("truth length must match the curves")
    if segmentation is not None and segmentation.frame_count != t:
        raise DomainError("segmentation length must match the curves")

    frame = _Frame(x_max=float(t - 1), y_max=1.0)
    body = frame.axes("frame index", "normalized progress", _ticks(float(t - 1)), _ticks(1.0))
    xs = np.arange(t)
    legend = []
    if truth is not None:
        span = float(truth.theta[-1] - truth.theta[0])
        if span <= 0:
            raise DomainError("truth is constant and cannot be normalized for plotting")
        ref = (truth.theta - truth.theta[0]) / span
        body.append(frame.polyline(xs, ref, TRUTH_COLOR, width=2.5))
        legend.append(("truth", TRUTH_COLOR, False))
    for idx, (label, curve) in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        body.append(frame.polyline(xs, curve.normalized, color))
        legend.append((label, color, False))
    if segmentation is not None:
        for seg in segmentation.segments:
            y0 = seg.intercept + seg.slope * seg.start
            y1 = seg.intercept + seg.slope * seg.end
            body.append(
                f'<line x1="{frame.x(seg.start):.3f}" y1="{frame.y(y0):.3f}" '
                f'x2="{frame.x(seg.end):.3f}" y2="{frame.y(y1):.3f}" '
                f'stroke="{SEGMENT_COLOR}" stroke-width="1.5" stroke-dasharray="6,4"/>'
            )
        legend.append(("segment fits", SEGMENT_COLOR, True))
    body.extend(_legend(frame, legend))
    Path(out_path).write_text(_document(body), encoding="utf-8")


def plot_schedule(schedule: WarpSchedule, out_path: PathLike) -> None:
    """Render tau plus one full-strength position curve per band.

    Bands are drawn at maximum warp (gamma = 1) so the band ordering is
    visible: low bands hug tau, high bands hug the diagonal.
    """
    t = schedule.frame_count
    frame = _Frame(x_max=float(t - 1), y_max=float(t - 1))
    body = frame.axes(
        "output frame index", "sampled frame position", _ticks(float(t - 1)), _ticks(float(t - 1))
    )
    xs = np.arange(t)
    ramp = np.arange(t, dtype=np.float64)
    body.append(frame.polyline(xs, schedule.tau, TRUTH_COLOR, width=2.5))
    legend = [("tau (full warp)", TRUTH_COLOR, False)]
    for band, alpha in enumerate(schedule.band_schedule.strengths):
        color = PALETTE[band % len(PALETTE)]
        positions = ramp + alpha * (schedule.tau - ramp)
        body.append(frame.polyline(xs, positions, color))
        legend.append((f"band {band} (alpha={alpha:.3f})", color, False))
    body.extend(_legend(frame, legend))
    Path(out_path).write_text(_document(body), encoding="utf-8")
