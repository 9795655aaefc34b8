"""Edge-map post-processing: wash-up, hole filling, morphological closing.

The composition ``eehssi`` turns the enhanced edge map into a cleaned binary
picture: spurious edges near the seed center are washed away, enclosed holes
are filled, and a closing bridges small gaps before a final fill.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.ndimage as ndi

from .imgcore import BinaryMask
from .roi_init import CircleROI


@dataclass(frozen=True)
class WashupParams:
    """Wash radius as a fraction of the seed circle radius."""

    ewr_factor: float = 0.8

    def __post_init__(self):
        if not 0 < self.ewr_factor <= 1:
            raise ValueError("ewr_factor must be in (0, 1]")


def structuring_element(size: int = 3) -> np.ndarray:
    """Square all-true neighborhood of odd side length."""
    if size < 1 or size % 2 == 0:
        raise ValueError("structuring element size must be odd and >= 1")
    return np.ones((size, size), dtype=bool)


def washup(edge: BinaryMask, roi: CircleROI,
           params: WashupParams = WashupParams()) -> BinaryMask:
    """Clear all edge pixels within ``ewr_factor * r`` of the circle center."""
    edge = np.asarray(edge)
    h, w = edge.shape
    yy, xx = np.ogrid[0:h, 0:w]
    wash_r = params.ewr_factor * roi.r
    out = edge.copy()
    out[(xx - roi.cx) ** 2 + (yy - roi.cy) ** 2 <= wash_r * wash_r] = False
    return out


def fill_holes(mask: BinaryMask) -> BinaryMask:
    """Fill background regions not 4-connected to the image border."""
    return ndi.binary_fill_holes(np.asarray(mask, dtype=bool))


def morph_close(mask: BinaryMask, se: np.ndarray | None = None) -> BinaryMask:
    """Dilation followed by erosion.

    The mask is padded by the element radius before dilating so the closing
    behaves as on an unbounded plane, then cropped back. A clipped dilation
    would erase border-touching content and break idempotence.
    """
    mask = np.asarray(mask, dtype=bool)
    se = structuring_element() if se is None else np.asarray(se, dtype=bool)
    if se.ndim != 2 or se.shape[0] % 2 == 0 or se.shape[1] % 2 == 0:
        raise ValueError("structuring element must be 2-D with odd sides")
    ry, rx = se.shape[0] // 2, se.shape[1] // 2
    padded = np.pad(mask, ((ry, ry), (rx, rx)), constant_values=False)
    closed = ndi.binary_erosion(ndi.binary_dilation(padded, structure=se),
                                structure=se, border_value=0)
    h, w = mask.shape
    return closed[ry:ry + h, rx:rx + w]


def eehssi(edge_hssi: BinaryMask, roi: CircleROI,
           wp: WashupParams = WashupParams(),
           se: np.ndarray | None = None) -> BinaryMask:
    """Full post-processing chain: wash, fill, close, fill again."""
    return fill_holes(morph_close(fill_holes(washup(edge_hssi, roi, wp)), se))
