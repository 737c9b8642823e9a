"""Canonical grayscale image representation and file I/O.

All pixel math in this package operates on a single representation: a
2D grid of real intensities in [0, 1]. Quantization to 8-bit codes
happens only at file boundaries (and inside the JPEG degradation,
which is deliberately defined on quantized data).
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, IoError, ParameterError, ShapeError

#: Fixed RGB -> luma weights (ITU-R BT.601). Kept as a module constant so
#: alternative weightings can be exercised explicitly in tests.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

_PGM_HEADER = re.compile(rb"^P5\s")


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable grayscale image with intensities in [0, 1].

    ``data`` is a read-only float64 array of shape (height, width).
    Instances are safe to share across threads.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise ShapeError(f"GrayImage needs a 2D array, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError(f"GrayImage needs height, width >= 1, got {arr.shape}")
        if not np.isfinite(arr).all():
            raise ParameterError("GrayImage intensities must be finite")
        lo, hi = float(arr.min()), float(arr.max())
        if lo < 0.0 or hi > 1.0:
            raise ParameterError(
                f"GrayImage intensities must lie in [0, 1], got range [{lo}, {hi}]"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @classmethod
    def from_array(cls, arr, clip: bool = False) -> "GrayImage":
        """Build from an array-like; ``clip=True`` clamps into [0, 1] first."""
        a = np.asarray(arr, dtype=np.float64)
        if clip:
            a = np.clip(a, 0.0, 1.0)
        return cls(a)


def to_gray(rgb, max_value: float | None = None) -> GrayImage:
    """Convert a 3-channel image to grayscale with the fixed luma weights.

    Parameters
    ----------
    rgb : array-like
        Either an (H, W, 3) array or a sequence of three equally shaped
        2D channel arrays, in R, G, B order. Integer dtypes are mapped
        to [0, 1] by their maximum code value (255 for uint8, 65535 for
        uint16); float inputs are assumed to already be in [0, 1].
    max_value : float, optional
        Explicit code-value ceiling, overriding the dtype-based default.

    Returns
    -------
    GrayImage
        Weighted per-pixel sum, clamped to [0, 1].
    """
    if isinstance(rgb, (list, tuple)):
        shapes = {np.asarray(c).shape for c in rgb}
        if len(rgb) != 3 or len(shapes) != 1:
            raise ShapeError(f"expected three equally shaped channels, got shapes {shapes}")
        rgb = np.stack([np.asarray(c) for c in rgb], axis=-1)
    arr = np.asarray(rgb)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ShapeError(f"expected an (H, W, 3) image, got shape {arr.shape}")
    if max_value is None:
        max_value = _default_max_value(arr.dtype)
    chans = arr.astype(np.float64) / max_value
    w = LUMA_WEIGHTS
    gray = w[0] * chans[:, :, 0] + w[1] * chans[:, :, 1] + w[2] * chans[:, :, 2]
    return GrayImage.from_array(gray, clip=True)


def _default_max_value(dtype) -> float:
    if np.issubdtype(dtype, np.floating):
        return 1.0
    if np.issubdtype(dtype, np.integer):
        return float(np.iinfo(dtype).max)
    raise ParameterError(f"unsupported channel dtype {dtype}")


def load_image(path) -> GrayImage:
    """Load a PNG, JPEG, or binary PGM file as a GrayImage.

    Color inputs are converted with :data:`LUMA_WEIGHTS`; grayscale
    inputs are divided by the container's maximum code value. Alpha
    channels are dropped before conversion.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if _PGM_HEADER.match(raw):
        return _decode_pgm(raw, path)
    try:
        img = Image.open(io.BytesIO(raw))
        img.load()
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeError(f"cannot decode {path}: {exc}") from exc
    if img.format not in ("PNG", "JPEG"):
        raise DecodeError(f"unsupported format {img.format!r} for {path}")
    return _from_pil(img, path)


def _from_pil(img: Image.Image, path) -> GrayImage:
    mode = img.mode
    if mode == "P":
        img = img.convert("RGBA" if "transparency" in img.info else "RGB")
        mode = img.mode
    if mode in ("RGBA", "LA"):
        # drop alpha before conversion
        img = img.convert(mode[:-1])
        mode = img.mode
    arr = np.asarray(img)
    if mode == "RGB":
        return to_gray(arr)
    if mode == "L":
        return GrayImage.from_array(arr.astype(np.float64) / 255.0, clip=True)
    if mode in ("I", "I;16", "I;16B"):
        return GrayImage.from_array(arr.astype(np.float64) / 65535.0, clip=True)
    raise DecodeError(f"unsupported pixel mode {mode!r} for {path}")


def _decode_pgm(raw: bytes, path) -> GrayImage:
    # Binary PGM (P5). Header tokens may be separated by whitespace and
    # '#' comments; maxval decides the sample width and the normalization.
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if pos < len(raw) and raw[pos : pos + 1] == b"#":
            pos = raw.find(b"\n", pos)
            if pos < 0:
                raise DecodeError(f"truncated PGM header in {path}")
            continue
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        token = raw[start:pos]
        if not token.isdigit():
            raise DecodeError(f"bad PGM header token {token!r} in {path}")
        fields.append(int(token))
    pos += 1  # single whitespace byte after maxval
    width, height, maxval = fields
    if width < 1 or height < 1 or not (0 < maxval < 65536):
        raise DecodeError(f"bad PGM dimensions/maxval in {path}")
    dtype = np.dtype(">u2") if maxval > 255 else np.uint8
    count = width * height
    pixels = np.frombuffer(raw, dtype=dtype, count=count, offset=pos)
    if pixels.size != count:
        raise DecodeError(f"truncated PGM pixel data in {path}")
    data = pixels.reshape(height, width).astype(np.float64) / float(maxval)
    return GrayImage.from_array(data, clip=True)


def save_image(img: GrayImage, path) -> None:
    """Write an 8-bit grayscale PNG or PGM, chosen by file extension.

    Intensities are quantized by round(i * 255).
    """
    path = Path(path)
    codes = np.clip(np.rint(img.data * 255.0), 0, 255).astype(np.uint8)
    ext = path.suffix.lower()
    if ext == ".png":
        buf = io.BytesIO()
        Image.fromarray(codes, mode="L").save(buf, format="PNG")
        payload = buf.getvalue()
    elif ext == ".pgm":
        header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
        payload = header + codes.tobytes()
    else:
        raise ParameterError(f"unsupported save extension {ext!r} (use .png or .pgm)")
    try:
        path.write_bytes(payload)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
