"""Pixel-space baseline metrics: PSNR and SSIM on same-size image pairs.

Both operate on the [0, 1] intensity domain, so the PSNR peak is 1.0 and
the SSIM data range is 1.0. The SSIM implementation is the Gaussian
windowed variant; its constants are exposed as keyword arguments so a
run's effective configuration can be reported verbatim.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.ndimage import correlate1d

from .errors import ParameterError, ShapeError
from .image import GrayImage

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


def _check_same_shape(a: GrayImage, b: GrayImage) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"image shapes differ: {a.shape} vs {b.shape}")


def mse(a: GrayImage, b: GrayImage) -> float:
    _check_same_shape(a, b)
    d = a.data - b.data
    return float(np.mean(d * d))


def psnr(a: GrayImage, b: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB with peak 1.0.

    Returns ``math.inf`` exactly when the mean squared error is zero;
    callers that aggregate PSNR must treat that state explicitly.
    """
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return float(10.0 * np.log10(1.0 / err))


def _gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def _windowed_mean(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # separable Gaussian, then crop to the valid region
    r = (kernel.size - 1) // 2
    out = correlate1d(img, kernel, axis=0, mode="constant")
    out = correlate1d(out, kernel, axis=1, mode="constant")
    return out[r:-r, r:-r]


def ssim(
    a: GrayImage,
    b: GrayImage,
    window_size: int = SSIM_WINDOW,
    sigma: float = SSIM_SIGMA,
    k1: float = SSIM_K1,
    k2: float = SSIM_K2,
    data_range: float = 1.0,
) -> float:
    """Mean structural similarity over a Gaussian-windowed valid region.

    Parameters follow the common convention: an 11x11 window with
    sigma 1.5 and stabilizers C1 = (k1*L)^2, C2 = (k2*L)^2 for data
    range L.

    Raises
    ------
    ShapeError
        If the two images differ in size.
    ParameterError
        If either dimension is smaller than the window.
    """
    _check_same_shape(a, b)
    if min(a.shape) < window_size:
        raise ParameterError(
            f"image {a.shape} is smaller than the {window_size}x{window_size} window"
        )
    kernel = _gaussian_kernel(window_size, sigma)
    x, y = a.data, b.data
    mu_x = _windowed_mean(x, kernel)
    mu_y = _windowed_mean(y, kernel)
    var_x = _windowed_mean(x * x, kernel) - mu_x * mu_x
    var_y = _windowed_mean(y * y, kernel) - mu_y * mu_y
    cov = _windowed_mean(x * y, kernel) - mu_x * mu_y
    c1 = (k1 * data_range) ** 2
    c2 = (k2 * data_range) ** 2
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


def ssim_params_dict() -> dict:
    """Effective SSIM configuration, for report headers."""
    return {
        "window_size": SSIM_WINDOW,
        "sigma": SSIM_SIGMA,
        "k1": SSIM_K1,
        "k2": SSIM_K2,
        "data_range": 1.0,
    }
