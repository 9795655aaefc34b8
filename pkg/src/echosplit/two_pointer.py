"""Histogram shape classification and two-pointer placement.

The ROI histogram is split into a dominant population and outlying
intensities by two pointers ``xl`` and ``xr``. A histogram whose smoothed
peak sits at the dark end is treated as decaying (lesion nearly saturated
with black pixels); anything else falls back to the bell rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .imgcore import Histogram256


class HistogramShape(enum.Enum):
    DECAYING = "decaying"
    BELL = "bell"


@dataclass(frozen=True)
class ThresholdParams:
    """Pointer stopping fractions and the decaying-shape peak cutoff."""

    right_threshold: float = 0.10
    left_threshold: float = 0.25
    decay_peak_cutoff: int = 5

    def __post_init__(self):
        if not (0 < self.right_threshold < 1):
            raise ValueError("right_threshold must be in (0, 1)")
        if not (0 < self.left_threshold < 1):
            raise ValueError("left_threshold must be in (0, 1)")
        if self.decay_peak_cutoff < 0:
            raise ValueError("decay_peak_cutoff must be >= 0")


@dataclass(frozen=True)
class PointerPair:
    xl: int
    xr: int
    xp: int
    shape: HistogramShape

    def __post_init__(self):
        if not (0 <= self.xl < self.xr <= 255):
            raise ValueError(f"pointers out of order: xl={self.xl} xr={self.xr}")


def _counts(hist: Histogram256) -> np.ndarray:
    counts = np.asarray(hist)
    if counts.shape != (256,):
        raise ValueError("histogram must have exactly 256 bins")
    if counts.sum() == 0:
        raise ValueError("empty histogram")
    return counts


def _below(count: int, fraction: float, peak: int) -> bool:
    # Exact rational test count < fraction * peak. Floating multiplication
    # would make the comparison depend on the absolute scale of the counts.
    num, den = fraction.as_integer_ratio()
    return int(count) * den < num * int(peak)


def classify(hist: Histogram256, params: ThresholdParams = ThresholdParams()) -> HistogramShape:
    """Decaying iff the 3-bin moving-average peak sits at or below the cutoff.

    Smoothing uses a zero-padded 3-bin window sum; argmax ties resolve to the
    lowest index. Bell is the catch-all for every other shape.
    """
    counts = _counts(hist)
    smoothed = np.convolve(counts.astype(np.int64), np.ones(3, dtype=np.int64), mode="same")
    if int(np.argmax(smoothed)) <= params.decay_peak_cutoff:
        return HistogramShape.DECAYING
    return HistogramShape.BELL


def place_pointers(hist: Histogram256, params: ThresholdParams = ThresholdParams()) -> PointerPair:
    """Place the left/right pointers around the dominant histogram population.

    Decaying: ``xl = 0``; ``xr`` is the first index right of ``xl`` whose
    count drops below ``right_threshold`` of the raw peak count, else 255.

    Bell: ``xr`` slides right from ``xp + 1`` until the count drops below
    ``right_threshold`` of the peak, else 255; ``xl`` slides left from
    ``xp - 1`` until the count drops below ``left_threshold``, else 0.
    """
    counts = _counts(hist)
    shape = classify(counts, params)
    xp = int(np.argmax(counts))
    peak = int(counts[xp])

    if shape is HistogramShape.DECAYING:
        xl = 0
        xr = 255
        for j in range(xl + 1, 256):
            if _below(counts[j], params.right_threshold, peak):
                xr = j
                break
    else:
        xr = 255
        for j in range(xp + 1, 256):
            if _below(counts[j], params.right_threshold, peak):
                xr = j
                break
        xl = 0
        for j in range(xp - 1, -1, -1):
            if _below(counts[j], params.left_threshold, peak):
                xl = j
                break
    return PointerPair(xl=xl, xr=xr, xp=xp, shape=shape)
