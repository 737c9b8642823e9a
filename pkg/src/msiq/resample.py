"""Separable image resampling with explicit float64 kernel weights.

Each axis is resampled by a dense (n_out, n_in) weight matrix built
from the kernel, so a resize is ``W_rows @ image @ W_cols.T``. Source
positions follow the half-pixel center convention

    src = (dst + 0.5) * (n_in / n_out) - 0.5

and out-of-range taps replicate the border sample. Interpolating
kernels (bilinear, bicubic with a = -0.75) have unit row sums by
construction; the windowed-sinc kernel (lanczos, support 4) is
normalized explicitly; the area kernel integrates the box footprint of
each output cell exactly. Constant images are therefore reproduced to
float64 rounding for every method.
"""

from __future__ import annotations

import numpy as np

BICUBIC_A = -0.75
LANCZOS_SUPPORT = 4


def _cubic_kernel(t: np.ndarray) -> np.ndarray:
    a = BICUBIC_A
    t = np.abs(t)
    t2 = t * t
    t3 = t2 * t
    near = (a + 2.0) * t3 - (a + 3.0) * t2 + 1.0
    far = a * t3 - 5.0 * a * t2 + 8.0 * a * t - 4.0 * a
    return np.where(t <= 1.0, near, np.where(t < 2.0, far, 0.0))


def _lanczos_kernel(t: np.ndarray) -> np.ndarray:
    s = LANCZOS_SUPPORT
    out = np.sinc(t) * np.sinc(t / s)
    return np.where(np.abs(t) < s, out, 0.0)


def _tap_matrix(n_in: int, n_out: int, radius: int, kernel) -> np.ndarray:
    scale = n_in / n_out
    dst = np.arange(n_out, dtype=np.float64)
    src = (dst + 0.5) * scale - 0.5
    base = np.floor(src).astype(np.int64)
    w = np.zeros((n_out, n_in))
    rows = np.arange(n_out)
    for k in range(-radius + 1, radius + 1):
        idx = base + k
        weight = kernel(src - idx)
        np.add.at(w, (rows, np.clip(idx, 0, n_in - 1)), weight)
    return w / w.sum(axis=1, keepdims=True)


def _nearest_matrix(n_in: int, n_out: int) -> np.ndarray:
    scale = n_in / n_out
    idx = np.floor((np.arange(n_out, dtype=np.float64) + 0.5) * scale).astype(np.int64)
    idx = np.clip(idx, 0, n_in - 1)
    w = np.zeros((n_out, n_in))
    w[np.arange(n_out), idx] = 1.0
    return w


def _area_matrix(n_in: int, n_out: int) -> np.ndarray:
    # exact overlap of the output cell footprint with each source cell
    scale = n_in / n_out
    starts = np.arange(n_out, dtype=np.float64) * scale
    ends = starts + scale
    w = np.zeros((n_out, n_in))
    edges = np.arange(n_in + 1, dtype=np.float64)
    for i in range(n_out):
        lo = int(np.floor(starts[i]))
        hi = min(int(np.ceil(ends[i])), n_in)
        for k in range(lo, hi):
            overlap = min(ends[i], edges[k + 1]) - max(starts[i], edges[k])
            if overlap > 0:
                w[i, k] = overlap
    return w / w.sum(axis=1, keepdims=True)


def axis_weights(n_in: int, n_out: int, method: str) -> np.ndarray:
    if method == "nearest":
        return _nearest_matrix(n_in, n_out)
    if method == "bilinear":
        return _tap_matrix(n_in, n_out, 1, lambda t: np.maximum(0.0, 1.0 - np.abs(t)))
    if method == "bicubic":
        return _tap_matrix(n_in, n_out, 2, _cubic_kernel)
    if method == "lanczos4":
        return _tap_matrix(n_in, n_out, LANCZOS_SUPPORT, _lanczos_kernel)
    if method == "area":
        return _area_matrix(n_in, n_out)
    raise ValueError(f"unknown resample method {method!r}")


def resample(data: np.ndarray, out_h: int, out_w: int, method: str) -> np.ndarray:
    """Resample a 2D float64 array to (out_h, out_w)."""
    h, w = data.shape
    out = data
    if out_h != h:
        out = axis_weights(h, out_h, method) @ out
    if out_w != w:
        out = out @ axis_weights(w, out_w, method).T
    return out
