"""Overlap and edge-noise metrics for comparing pipeline variants."""

from __future__ import annotations

import numpy as np

from .imgcore import BinaryMask


def dsc(x: BinaryMask, y: BinaryMask) -> float:
    """Dice similarity 2|X n Y| / (|X| + |Y|), in [0, 1].

    Two empty masks make the ratio 0/0; that signals a broken stage, so it
    raises instead of returning a silent perfect score.
    """
    x = np.asarray(x, dtype=bool)
    y = np.asarray(y, dtype=bool)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    denom = int(x.sum()) + int(y.sum())
    if denom == 0:
        raise ValueError("undefined DSC: both masks are empty")
    return 2.0 * int((x & y).sum()) / denom


def pir(edge: BinaryMask, roi_gt: BinaryMask) -> float:
    """Percentage of ground-truth area covered by edge pixels.

    100 x (edge pixels inside the ground-truth region) / (region area).
    Lower is better for an interior that should be edge-free.
    """
    edge = np.asarray(edge, dtype=bool)
    roi_gt = np.asarray(roi_gt, dtype=bool)
    if edge.shape != roi_gt.shape:
        raise ValueError(f"dimension mismatch: {edge.shape} vs {roi_gt.shape}")
    area = int(roi_gt.sum())
    if area == 0:
        raise ValueError("empty ground-truth region")
    return 100.0 * int((edge & roi_gt).sum()) / area
