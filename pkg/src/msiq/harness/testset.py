"""Bundled test images: procedural stand-ins plus optional real samples.

The six synthetic images are generated deterministically (fixed seeds,
no files to ship) and are designed to span the content classes the
experiments need: smooth shading, periodic structure, a compact object,
text-like strokes, a sparse blob field, and a noise-textured photo
proxy. When scikit-image is installed, ``source="skimage"`` loads the
six classic sample photographs instead.
"""

from __future__ import annotations

import numpy as np

from ..errors import IoError, ParameterError
from ..image import GrayImage, load_image, to_gray

DEFAULT_SIZE = 256

SYNTHETIC_NAMES = ("gradient", "checkerboard", "disk", "stripes", "blobs", "texture")
SKIMAGE_NAMES = ("camera", "moon", "coins", "page", "astronaut", "chelsea")

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".pgm")


def _blur(a: np.ndarray, sigma: float) -> np.ndarray:
    import cv2

    return cv2.GaussianBlur(a, (0, 0), sigmaX=sigma, sigmaY=sigma)


def _normalize(a: np.ndarray, lo: float = 0.03, hi: float = 0.97) -> np.ndarray:
    amin, amax = a.min(), a.max()
    if amax - amin < 1e-12:
        return np.full_like(a, (lo + hi) / 2.0)
    return lo + (hi - lo) * (a - amin) / (amax - amin)


def _grid(size: int) -> tuple[np.ndarray, np.ndarray]:
    ii, jj = np.mgrid[0:size, 0:size].astype(np.float64)
    return ii / (size - 1), jj / (size - 1)


def gradient_image(size: int = DEFAULT_SIZE) -> GrayImage:
    """Smooth diagonal shading with one soft bump; nearly JPEG-transparent."""
    u, v = _grid(size)
    bump = np.exp(-(((u - 0.62) ** 2 + (v - 0.3) ** 2) / 0.04))
    a = 0.55 * u + 0.35 * v + 0.45 * bump
    return GrayImage(_normalize(a))


def checkerboard_image(size: int = DEFAULT_SIZE, period: int = 32) -> GrayImage:
    """Checkerboard with saturated squares, a light ramp, and soft edges.

    Flat regions sit exactly at 0 and 1 while the square borders are
    blurred: compression artifacts on the plateaus rectify against the
    intensity bounds, but smooth edges keep resampling overshoot from
    clipping.
    """
    ii, jj = np.mgrid[0:size, 0:size]
    board = ((ii // (period // 2) + jj // (period // 2)) % 2).astype(np.float64)
    u, v = _grid(size)
    a = np.clip(1.06 * board - 0.03 + 0.08 * u - 0.04 * v, 0.0, 1.0)
    a = np.clip(_blur(a, 1.2), 0.0, 1.0)
    return GrayImage(a)


def disk_image(size: int = DEFAULT_SIZE) -> GrayImage:
    """Saturated off-center disk with a soft edge on a dark background."""
    u, v = _grid(size)
    r = np.sqrt((u - 0.42) ** 2 + (v - 0.58) ** 2)
    edge = 5.0 / size
    disk = 0.54 * (1.0 - np.tanh((r - 0.27) / edge))
    a = 0.06 + 0.06 * v + disk
    return GrayImage(np.clip(a, 0.0, 1.0))


def stripes_image(size: int = DEFAULT_SIZE, seed: int = 20240517) -> GrayImage:
    """Text-like field: saturated ink strokes on white, softly blurred."""
    rng = np.random.default_rng(seed)
    a = np.ones((size, size))
    line_h = max(6, size // 24)
    y = line_h
    while y + line_h < size - line_h:
        x = int(rng.integers(4, max(5, size // 8)))
        while x < size - 8:
            w = int(rng.integers(max(2, size // 32), max(3, size // 8)))
            gap = int(rng.integers(3, max(4, size // 24)))
            a[y : y + line_h - 3, x : min(x + w, size - 4)] = 0.0
            x += w + gap
        y += line_h + int(rng.integers(2, 6))
    a = np.clip(_blur(a, 1.0), 0.0, 1.0)
    return GrayImage(a)


def blobs_image(size: int = DEFAULT_SIZE, seed: int = 20240518, count: int = 48) -> GrayImage:
    """Sparse field of Gaussian blobs; the strongest ones saturate."""
    rng = np.random.default_rng(seed)
    u, v = _grid(size)
    a = 0.45 + 0.1 * u
    for _ in range(count):
        cx, cy = rng.uniform(0.05, 0.95, size=2)
        s = rng.uniform(0.01, 0.05)
        amp = rng.uniform(0.3, 0.8) * (1 if rng.uniform() < 0.7 else -1)
        a = a + amp * np.exp(-(((u - cx) ** 2 + (v - cy) ** 2) / (2 * s * s)))
    return GrayImage(np.clip(a, 0.0, 1.0))


def texture_image(size: int = DEFAULT_SIZE, seed: int = 20240519) -> GrayImage:
    """Photo proxy: ridged multi-octave noise with saturated extremes.

    The absolute value of each band-limited octave creates crease lines
    at every scale, and the histogram is stretched slightly past the
    intensity bounds so small flat regions saturate. This keeps the
    compression response measurable and growing over the quality range
    the control uses.
    """
    rng = np.random.default_rng(seed)
    t = np.zeros((size, size))
    for sigma, amp in ((16.0, 0.5), (8.0, 0.4), (4.0, 0.3), (2.0, 0.2)):
        layer = _blur(rng.standard_normal((size, size)), sigma)
        t += amp * np.abs(layer) / max(np.abs(layer).max(), 1e-12)
    t = (t - t.min()) / (t.max() - t.min())
    return GrayImage(np.clip(-0.08 + 1.16 * t, 0.0, 1.0))


_GENERATORS = {
    "gradient": gradient_image,
    "checkerboard": checkerboard_image,
    "disk": disk_image,
    "stripes": stripes_image,
    "blobs": blobs_image,
    "texture": texture_image,
}


def standard_test_images(
    source: str = "synthetic", size: int = DEFAULT_SIZE
) -> dict[str, GrayImage]:
    """The six-image evaluation set, keyed by image id.

    ``source="synthetic"`` (default) generates the procedural set;
    ``source="skimage"`` loads the classic sample photographs, which
    requires scikit-image.
    """
    if source == "synthetic":
        return {name: _GENERATORS[name](size) for name in SYNTHETIC_NAMES}
    if source == "skimage":
        try:
            from skimage import data
        except ImportError as exc:
            raise ParameterError(
                "image source 'skimage' requires scikit-image to be installed"
            ) from exc
        out: dict[str, GrayImage] = {}
        for name in SKIMAGE_NAMES:
            arr = getattr(data, name)()
            if arr.ndim == 3:
                out[name] = to_gray(arr)
            else:
                out[name] = GrayImage.from_array(arr.astype(np.float64) / 255.0, clip=True)
        return out
    raise ParameterError(f"unknown image source {source!r}; valid: synthetic, skimage")


def load_images_from_dir(path) -> dict[str, GrayImage]:
    """Load every decodable image in a directory, keyed by file stem."""
    from pathlib import Path

    root = Path(path)
    if not root.is_dir():
        raise IoError(f"{root} is not a readable directory")
    images: dict[str, GrayImage] = {}
    for p in sorted(root.iterdir()):
        if p.suffix.lower() in IMAGE_EXTENSIONS and p.is_file():
            images[p.stem] = load_image(p)
    if not images:
        raise IoError(f"no decodable images found in {root}")
    return images
