"""Deterministic SVG rendering of loop trajectories.

Each point index gets one polyline in a 2D projection (a coordinate pair,
or the dominant PCA plane of all samples), a labeled start marker and an
arrowhead at its path end.  Output bytes depend only on the input samples
and the plot settings.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covering import PathSamples
from .errors import ParseError

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
)
STATIONARY_TOL = 1e-12


@dataclass(frozen=True)
class PlotSpec:
    """Projection and raster settings for loop plots."""

    projection: tuple[int, int] | str = (0, 1)  # coordinate pair or "pca"
    stride: int = 1
    width: int = 640
    height: int = 480

    def __post_init__(self):
        if self.stride < 1:
            raise ParseError("plot: field 'stride' must be >= 1")
        if self.width < 32 or self.height < 32:
            raise ParseError("plot: fields 'width'/'height' must be >= 32")
        if isinstance(self.projection, str):
            if self.projection != "pca":
                raise ParseError("plot: field 'projection' must be two indices or 'pca'")
        elif len(self.projection) != 2:
            raise ParseError("plot: field 'projection' must have exactly two indices")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _point_label(i: int) -> str:
    return chr(ord("A") + i) if i < 26 else f"P{i}"


def _pca_plane(stacked: np.ndarray) -> np.ndarray:
    """Top-2 principal directions of the pooled points, sign-fixed."""
    centered = stacked - stacked.mean(axis=0, keepdims=True)
    _, _, vh = np.linalg.svd(centered, full_matrices=False)
    axes = vh[: 2] if vh.shape[0] >= 2 else np.vstack([vh, np.zeros_like(vh[0])])
    fixed = []
    for ax in axes:
        k = int(np.argmax(np.abs(ax)))
        fixed.append(-ax if ax[k] < 0 else ax)
    return np.vstack(fixed)


def _project(path: PathSamples, spec: PlotSpec) -> np.ndarray:
    """(m, n, 2) array of projected sample points, stride applied, last kept."""
    idx = list(range(0, len(path.samples), spec.stride))
    if idx[-1] != len(path.samples) - 1:
        idx.append(len(path.samples) - 1)
    pts = np.stack([path.samples[k].points for k in idx])  # (m, n, d)
    if spec.projection == "pca":
        plane = _pca_plane(pts.reshape(-1, path.d))
        return pts @ plane.T
    i, j = spec.projection
    if not (0 <= i < path.d and 0 <= j < path.d):
        raise ParseError(
            f"plot: field 'projection' indices ({i}, {j}) out of range for d={path.d}"
        )
    return pts[:, :, [i, j]]


def render_loop_svg(path: PathSamples, spec: PlotSpec | None = None) -> str:
    """Render the loop's per-point trajectories as an SVG 1.1 document."""
    spec = spec or PlotSpec()
    proj = _project(path, spec)  # (m, n, 2)
    m, n, _ = proj.shape

    lo = proj.reshape(-1, 2).min(axis=0)
    hi = proj.reshape(-1, 2).max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    margin = 0.08 * max(spec.width, spec.height)
    scale = min((spec.width - 2 * margin) / span[0], (spec.height - 2 * margin) / span[1])
    offset = np.array(
        [
            (spec.width - scale * span[0]) / 2.0,
            (spec.height - scale * span[1]) / 2.0,
        ]
    )

    def to_px(p: np.ndarray) -> tuple[float, float]:
        x = offset[0] + scale * (p[0] - lo[0])
        y = spec.height - (offset[1] + scale * (p[1] - lo[1]))  # svg y grows downward
        return x, y

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="white"/>',
    ]
    for i in range(n):
        color = PALETTE[i % len(PALETTE)]
        track = proj[:, i, :]
        moving = float(np.linalg.norm(track - track[0], axis=1).max()) > STATIONARY_TOL
        if moving:
            coords = [to_px(p) for p in track]
            d = "M" + "L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords)
            parts.append(
                f'<path d="{d}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
            # arrowhead along the final segment
            tail, head = np.array(coords[-2]), np.array(coords[-1])
            direction = head - tail
            norm = float(np.linalg.norm(direction))
            if norm > 1e-9:
                u = direction / norm
                left = head - 8.0 * u + 4.0 * np.array([-u[1], u[0]])
                right = head - 8.0 * u - 4.0 * np.array([-u[1], u[0]])
                parts.append(
                    f'<polygon points="{_fmt(head[0])},{_fmt(head[1])} '
                    f'{_fmt(left[0])},{_fmt(left[1])} {_fmt(right[0])},{_fmt(right[1])}" '
                    f'fill="{color}"/>'
                )
        x0, y0 = to_px(track[0])
        parts.append(f'<circle cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="3" fill="{color}"/>')
        parts.append(
            f'<text x="{_fmt(x0 + 5)}" y="{_fmt(y0 - 5)}" font-family="sans-serif" '
            f'font-size="12" fill="{color}">{_point_label(i)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
