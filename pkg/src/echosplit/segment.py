"""Active-contour segmentation seeded from the user circle.

The contour is a closed polygon evolved by a semi-implicit step: internal
elasticity and rigidity terms are folded into a precomputed circulant system
matrix, the external force is the gradient of a normalized edge-strength
field (Sobel magnitude of the blurred image). The same initialization is run
on the original image and on the split-transformed image so the two
segmentations are directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.ndimage as ndi

from .edges import sobel_gradient
from .imgcore import BinaryMask, GrayImage
from .roi_init import CircleROI

Contour = np.ndarray  # (n, 2) float64, columns (x, y), implicitly closed


@dataclass(frozen=True)
class SnakeParams:
    alpha: float = 0.1       # elasticity weight
    beta: float = 0.5        # rigidity weight
    gamma: float = 1.0       # time step
    kappa: float = 2.0       # external force weight
    iterations: int = 300
    n_points: int = 100
    blur_sigma: float = 2.0  # smoothing of the edge-strength field

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma, self.kappa) <= 0:
            raise ValueError("snake weights must be > 0")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.n_points < 8:
            raise ValueError("n_points must be >= 8")
        if not self.blur_sigma > 0:
            raise ValueError("blur_sigma must be > 0")


def init_contour(roi: CircleROI, n_points: int) -> Contour:
    """``n_points`` equally spaced points on the circle, counterclockwise."""
    if n_points < 3:
        raise ValueError("a closed contour needs at least 3 points")
    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    pts = np.empty((n_points, 2), dtype=np.float64)
    pts[:, 0] = roi.cx + roi.r * np.cos(theta)
    pts[:, 1] = roi.cy + roi.r * np.sin(theta)
    return pts


def _bilinear(field: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    h, w = field.shape
    x = np.clip(x, 0.0, w - 1.0)
    y = np.clip(y, 0.0, h - 1.0)
    x0 = np.floor(x).astype(int)
    y0 = np.floor(y).astype(int)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    tx = x - x0
    ty = y - y0
    return (field[y0, x0] * (1 - tx) * (1 - ty) + field[y0, x1] * tx * (1 - ty)
            + field[y1, x0] * (1 - tx) * ty + field[y1, x1] * tx * ty)


def _system_inverse(n: int, params: SnakeParams) -> np.ndarray:
    # Circulant second-difference operator; the semi-implicit update solves
    # (I - gamma*alpha*D2 + gamma*beta*D2^2) x_next = x + gamma*kappa*F.
    d2 = -2.0 * np.eye(n) + np.roll(np.eye(n), 1, axis=0) + np.roll(np.eye(n), -1, axis=0)
    m = np.eye(n) - params.gamma * params.alpha * d2 + params.gamma * params.beta * (d2 @ d2)
    return np.linalg.inv(m)


def snake_evolve(img: GrayImage, init: Contour,
                 params: SnakeParams = SnakeParams()) -> Contour:
    """Evolve ``init`` toward high gradient magnitude of the blurred image.

    Points are clamped to image bounds after every iteration. Raises
    ArithmeticError if any coordinate becomes non-finite.
    """
    img = np.asarray(img)
    pts = np.array(init, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ValueError("contour must be an (n, 2) array with n >= 3")
    if params.iterations == 0:
        return pts

    blurred = ndi.gaussian_filter(img.astype(np.float64), params.blur_sigma,
                                  mode="nearest")
    strength = sobel_gradient(blurred)
    peak = strength.max()
    if peak > 0:
        strength = strength / peak
    fy, fx = np.gradient(strength)

    minv = _system_inverse(len(pts), params)
    h, w = img.shape
    gk = params.gamma * params.kappa
    x, y = pts[:, 0], pts[:, 1]
    for _ in range(params.iterations):
        xn = minv @ (x + gk * _bilinear(fx, x, y))
        yn = minv @ (y + gk * _bilinear(fy, x, y))
        if not (np.isfinite(xn).all() and np.isfinite(yn).all()):
            raise ArithmeticError("snake diverged: non-finite coordinates")
        x = np.clip(xn, 0.0, w - 1.0)
        y = np.clip(yn, 0.0, h - 1.0)
    return np.column_stack([x, y])


def contour_to_mask(contour: Contour, dims: tuple[int, int]) -> BinaryMask:
    """Rasterize a closed polygon with the even-odd rule, boundary inclusive.

    Each scan row is tested against the polygon twice, with vertices at
    exactly the row height counted as below and as above; the union of the
    two fills keeps boundary rows that a single half-open pass would drop.
    """
    pts = np.asarray(contour, dtype=np.float64)
    h, w = dims
    mask = np.zeros((h, w), dtype=bool)
    if len(pts) < 3:
        return mask
    xi, yi = pts[:, 0], pts[:, 1]
    xj, yj = np.roll(xi, 1), np.roll(yi, 1)
    for row in range(h):
        for below_i, below_j in ((yi < row, yj < row), (yi <= row, yj <= row)):
            cross = below_i != below_j
            if not cross.any():
                continue
            t = (row - yi[cross]) / (yj[cross] - yi[cross])
            nodes = np.sort(xi[cross] + t * (xj[cross] - xi[cross]))
            for k in range(0, len(nodes) - 1, 2):
                a = max(int(np.ceil(nodes[k])), 0)
                b = min(int(np.floor(nodes[k + 1])), w - 1)
                if b >= a:
                    mask[row, a:b + 1] = True
    return mask
