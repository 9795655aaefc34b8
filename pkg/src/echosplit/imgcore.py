"""Raster and histogram primitives plus grayscale file I/O.

Conventions used across the package:

* ``GrayImage``: 2-D ``numpy.ndarray`` of ``uint8``, shape ``(height, width)``.
* ``BinaryMask``: 2-D ``numpy.ndarray`` of ``bool``, same shape convention.
* ``Histogram256``: 1-D integer array of length 256; ``counts[i]`` is the
  number of pixels with intensity ``i``.

Supported file formats are 8-bit grayscale PNG and binary PGM (P5). Color
inputs are converted deterministically via integer-rounded Rec.601 luminance.
Masks serialize as 0/255 grayscale PNG and are re-binarized at 128 on load.
"""

from __future__ import annotations

import numpy as np
from PIL import Image

GrayImage = np.ndarray
BinaryMask = np.ndarray
Histogram256 = np.ndarray

# PIL modes with more than 8 bits per channel; loading these would truncate.
_DEEP_MODES = {"I", "I;16", "I;16B", "I;16L", "I;16N", "F"}


def _to_luminance(arr: np.ndarray) -> np.ndarray:
    # Integer round-half-up Rec.601: floor((299R + 587G + 114B + 500) / 1000).
    r = arr[..., 0].astype(np.uint32)
    g = arr[..., 1].astype(np.uint32)
    b = arr[..., 2].astype(np.uint32)
    return ((299 * r + 587 * g + 114 * b + 500) // 1000).astype(np.uint8)


def load_gray(path) -> GrayImage:
    """Load an 8-bit grayscale image; color inputs collapse to luminance.

    Raises:
        OSError: unreadable or unparseable file.
        ValueError: more than 8 bits per channel.
    """
    with Image.open(path) as im:
        if im.mode in _DEEP_MODES:
            raise ValueError(f"unsupported bit depth in {path}: mode {im.mode}")
        if im.mode == "L":
            return np.asarray(im, dtype=np.uint8)
        if im.mode in ("P", "LA", "RGBA", "CMYK"):
            im = im.convert("RGB")
        if im.mode == "RGB":
            return _to_luminance(np.asarray(im))
        if im.mode == "1":
            return (np.asarray(im, dtype=np.uint8) * 255).astype(np.uint8)
        raise ValueError(f"unsupported image mode in {path}: {im.mode}")


def save_gray(img: GrayImage, path) -> None:
    """Write ``img`` as PNG or PGM depending on the path suffix."""
    img = np.asarray(img)
    if img.dtype != np.uint8 or img.ndim != 2:
        raise ValueError("expected a 2-D uint8 image")
    try:
        Image.fromarray(img, mode="L").save(path)
    except (OSError, KeyError, ValueError) as exc:
        raise OSError(f"cannot write image to {path}: {exc}") from exc


def load_mask(path) -> BinaryMask:
    """Load a 0/255 mask image; any value >= 128 counts as foreground."""
    return load_gray(path) >= 128


def save_mask(mask: BinaryMask, path) -> None:
    mask = np.asarray(mask)
    if mask.dtype != bool or mask.ndim != 2:
        raise ValueError("expected a 2-D bool mask")
    save_gray(mask.astype(np.uint8) * 255, path)


def masked_histogram(img: GrayImage, mask: BinaryMask) -> Histogram256:
    """Intensity counts of the pixels selected by ``mask``.

    ``sum(counts)`` equals the number of true mask positions.
    """
    img = np.asarray(img)
    mask = np.asarray(mask)
    if img.shape != mask.shape:
        raise ValueError(f"dimension mismatch: image {img.shape} vs mask {mask.shape}")
    return np.bincount(img[mask].ravel(), minlength=256).astype(np.int64)
