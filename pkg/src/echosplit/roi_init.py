"""Circle region-of-interest construction from two user-selected points."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imgcore import BinaryMask


@dataclass(frozen=True)
class CircleROI:
    """Circle seeded from a center click and a circumference click."""

    cx: int
    cy: int
    r: float

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"circle radius must be >= 1, got {self.r}")


def _check_inside(name: str, x: int, y: int, dims: tuple[int, int]) -> None:
    h, w = dims
    if not (0 <= x < w and 0 <= y < h):
        raise ValueError(f"{name} point ({x}, {y}) outside image of size {w}x{h}")


def circle_from_points(center: tuple[int, int], rim: tuple[int, int],
                       dims: tuple[int, int]) -> CircleROI:
    """Build the ROI whose radius is the distance from ``center`` to ``rim``.

    ``dims`` is the image shape as ``(height, width)``. Both points must lie
    inside the image; identical points are rejected as a degenerate circle.
    """
    cx, cy = center
    px, py = rim
    _check_inside("center", cx, cy, dims)
    _check_inside("rim", px, py, dims)
    if (cx, cy) == (px, py):
        raise ValueError("degenerate circle: center and rim points coincide")
    return CircleROI(cx=cx, cy=cy, r=math.hypot(px - cx, py - cy))


def circle_mask(roi: CircleROI, dims: tuple[int, int]) -> BinaryMask:
    """Rasterize the circle to a membership mask, clipped at image borders.

    A pixel belongs iff its center satisfies (x-cx)^2 + (y-cy)^2 <= r^2; the
    boundary is inclusive.
    """
    h, w = dims
    yy, xx = np.ogrid[0:h, 0:w]
    return (xx - roi.cx) ** 2 + (yy - roi.cy) ** 2 <= roi.r * roi.r
