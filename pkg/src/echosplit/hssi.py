"""Split-and-stretch intensity transform around a pointer pair.

Pixels right of ``xr`` are pushed brighter by ``rsf`` and pixels left of
``xl`` are pushed darker by ``lsf``; the band ``[xl, xr]`` passes through
unchanged. The transform opens a blank region in the output histogram right
of the preserved band.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imgcore import GrayImage
from .two_pointer import PointerPair


@dataclass(frozen=True)
class SplitParams:
    """Scaling factors for the bands outside the pointer pair."""

    rsf: float = 1.5
    lsf: float = 0.5

    def __post_init__(self):
        if not self.rsf > 1:
            raise ValueError("rsf must be > 1")
        if not 0 <= self.lsf < 1:
            raise ValueError("lsf must be in [0, 1)")


def split_lut(xl: int, xr: int, sp: SplitParams = SplitParams()) -> np.ndarray:
    """256-entry lookup table realizing the piecewise scaling.

    Values strictly above ``xr`` map to clamp(round(v * rsf)); values strictly
    below ``xl`` map to clamp(round(v * lsf)); the rest map to themselves.
    Rounding is half-up.
    """
    if not 0 <= xl < xr <= 255:
        raise ValueError(f"pointers out of order: xl={xl} xr={xr}")
    v = np.arange(256, dtype=np.float64)
    out = v.copy()
    hi = v > xr
    lo = v < xl
    out[hi] = np.clip(np.floor(v[hi] * sp.rsf + 0.5), 0, 255)
    out[lo] = np.clip(np.floor(v[lo] * sp.lsf + 0.5), 0, 255)
    return out.astype(np.uint8)


def apply_split(img: GrayImage, pp: PointerPair, sp: SplitParams = SplitParams()) -> GrayImage:
    """Apply the split transform to every pixel of the image."""
    img = np.asarray(img)
    if img.dtype != np.uint8:
        raise ValueError("expected a uint8 image")
    return split_lut(pp.xl, pp.xr, sp)[img]
