"""Resamplers and the parameterized degradation families.

Resizing supports five interpolation kernels (nearest, bilinear,
bicubic, lanczos4, area), computed by the in-package separable
resampler so kernel normalization is exact in float64. Degradations are
five strength-parameterized transforms: four geometric ones
(anisotropic area-preserving scaling, shear, rotation, perspective)
realized as center-anchored inverse-mapped warps with bicubic sampling
and constant-zero border fill, plus a JPEG round-trip that serves as
the non-geometric control.

All outputs are clamped to [0, 1] and keep the input dimensions (for
``degrade``) or the requested dimensions (for resizing). Every function
here is pure and deterministic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import cv2
import numpy as np

from .errors import ParameterError
from .image import GrayImage
from .resample import resample

#: Border policy for all warps: out-of-domain samples read as 0.
#: Constant fill shifts low-order moments less than replication would,
#: but any border policy is part of the effective configuration.
BORDER_FILL = 0.0

#: JPEG quality mapping: strength 0 is a quality-100 round trip,
#: strength 0.20 encodes at quality 84.
JPEG_QUALITY_SLOPE = 80.0

#: Default rotation mapping: strength is the angle in radians.
ROTATION_RADIANS_PER_UNIT = 1.0


class ResizeMethod(enum.Enum):
    NEAREST = "nearest"
    BILINEAR = "bilinear"
    BICUBIC = "bicubic"
    LANCZOS4 = "lanczos4"
    AREA = "area"

    @classmethod
    def parse(cls, name: "str | ResizeMethod") -> "ResizeMethod":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {m.value: m for m in cls}
        aliases.update({"linear": cls.BILINEAR, "cubic": cls.BICUBIC, "lanczos": cls.LANCZOS4})
        if key not in aliases:
            valid = ", ".join(m.value for m in cls)
            raise ParameterError(f"unknown resize method {name!r}; valid: {valid}")
        return aliases[key]


ALL_RESIZE_METHODS = tuple(ResizeMethod)

#: Methods usable for forcibly returning a scaled copy to a reference
#: grid (area is a scaling generator only, not a return method).
RETURN_METHODS = (
    ResizeMethod.NEAREST,
    ResizeMethod.BILINEAR,
    ResizeMethod.BICUBIC,
    ResizeMethod.LANCZOS4,
)


class DegradationKind(enum.Enum):
    ANISOTROPIC_AFFINE = "anisotropic_affine"
    SHEAR = "shear"
    ROTATION = "rotation"
    PERSPECTIVE = "perspective"
    JPEG = "jpeg"

    @classmethod
    def parse(cls, name: "str | DegradationKind") -> "DegradationKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        aliases = {k.value: k for k in cls}
        aliases.update({"aniso": cls.ANISOTROPIC_AFFINE, "affine": cls.ANISOTROPIC_AFFINE})
        if key not in aliases:
            valid = ", ".join(k.value for k in cls)
            raise ParameterError(f"unknown degradation kind {name!r}; valid: {valid}")
        return aliases[key]


GEOMETRIC_KINDS = (
    DegradationKind.ANISOTROPIC_AFFINE,
    DegradationKind.SHEAR,
    DegradationKind.ROTATION,
    DegradationKind.PERSPECTIVE,
)

ALL_DEGRADATION_KINDS = GEOMETRIC_KINDS + (DegradationKind.JPEG,)

DEFAULT_LAMBDA_GRID = (0.0, 0.05, 0.10, 0.15, 0.20)


@dataclass(frozen=True)
class DegradationSpec:
    """One degradation kind plus its strength; fully determines a transform."""

    kind: DegradationKind
    strength: float

    def __post_init__(self):
        object.__setattr__(self, "kind", DegradationKind.parse(self.kind))
        if not (0.0 <= self.strength < 1.0):
            raise ParameterError(f"strength must lie in [0, 1), got {self.strength}")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def resize(img: GrayImage, scale: float, method: "ResizeMethod | str") -> GrayImage:
    """Resample by a scale factor; output is round(H*s) x round(W*s)."""
    method = ResizeMethod.parse(method)
    if scale <= 0:
        raise ParameterError(f"scale must be positive, got {scale}")
    out_h = _round_half_up(img.height * scale)
    out_w = _round_half_up(img.width * scale)
    if out_h < 1 or out_w < 1:
        raise ParameterError(
            f"scale {scale} collapses {img.shape} to {out_h}x{out_w}"
        )
    return resize_to(img, out_h, out_w, method)


def resize_to(
    img: GrayImage, out_h: int, out_w: int, method: "ResizeMethod | str"
) -> GrayImage:
    """Resample to exact target dimensions."""
    method = ResizeMethod.parse(method)
    if out_h < 1 or out_w < 1:
        raise ParameterError(f"target dimensions must be >= 1, got {out_h}x{out_w}")
    out = resample(img.data, out_h, out_w, method.value)
    return GrayImage.from_array(out, clip=True)


def jpeg_quality(strength: float) -> int:
    """Quality used by the JPEG control at a given strength."""
    return max(1, int(round(100.0 - JPEG_QUALITY_SLOPE * strength)))


def jpeg_roundtrip(img: GrayImage, quality: int) -> GrayImage:
    """Encode the 8-bit quantized image as baseline JPEG and decode it back.

    Operating on quantized codes keeps realistic quantization inside the
    control; the decoded codes are mapped back to [0, 1].
    """
    codes = np.clip(np.rint(img.data * 255.0), 0, 255).astype(np.uint8)
    ok, buf = cv2.imencode(".jpg", codes, [cv2.IMWRITE_JPEG_QUALITY, int(quality)])
    if not ok:
        raise ParameterError(f"JPEG encoding failed at quality {quality}")
    decoded = cv2.imdecode(buf, cv2.IMREAD_UNCHANGED)
    return GrayImage.from_array(decoded.astype(np.float64) / 255.0, clip=True)


def _warp_affine(img: GrayImage, m: np.ndarray) -> GrayImage:
    # cv2 5.x cubic warps corrupt float64 inputs; warp in float32.
    out = cv2.warpAffine(
        img.data.astype(np.float32),
        m.astype(np.float64),
        (img.width, img.height),
        flags=cv2.INTER_CUBIC,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=BORDER_FILL,
    )
    return GrayImage.from_array(out.astype(np.float64), clip=True)


def _warp_perspective(img: GrayImage, p: np.ndarray) -> GrayImage:
    out = cv2.warpPerspective(
        img.data.astype(np.float32),
        p.astype(np.float64),
        (img.width, img.height),
        flags=cv2.INTER_CUBIC,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=BORDER_FILL,
    )
    return GrayImage.from_array(out.astype(np.float64), clip=True)


def anisotropic_affine_matrix(img: GrayImage, strength: float) -> np.ndarray:
    """Area-preserving anisotropic scaling about the image center.

    Columns stretch by 1 + strength while rows compress by its inverse,
    so the forward Jacobian determinant is exactly 1.
    """
    sx = 1.0 + strength
    sy = 1.0 / (1.0 + strength)
    cx = (img.width - 1) / 2.0
    cy = (img.height - 1) / 2.0
    return np.array([[sx, 0.0, cx - sx * cx], [0.0, sy, cy - sy * cy]])


def shear_matrix(img: GrayImage, strength: float) -> np.ndarray:
    """Horizontal shear about the center: rows stay, columns shift by
    strength times the centered row coordinate."""
    cy = (img.height - 1) / 2.0
    return np.array([[1.0, strength, -strength * cy], [0.0, 1.0, 0.0]])


def rotation_matrix(
    img: GrayImage, strength: float, radians_per_unit: float = ROTATION_RADIANS_PER_UNIT
) -> np.ndarray:
    """Rotation about the center by strength * radians_per_unit radians."""
    center = ((img.width - 1) / 2.0, (img.height - 1) / 2.0)
    angle_deg = math.degrees(strength * radians_per_unit)
    return cv2.getRotationMatrix2D(center, angle_deg, 1.0)


def perspective_matrix(img: GrayImage, strength: float) -> np.ndarray:
    """Projective map pulling the two top corners inward by
    strength * W / 2 each; the bottom corners stay fixed."""
    h, w = img.height, img.width
    d = strength * w / 2.0
    src = np.float32([[0, 0], [w - 1, 0], [0, h - 1], [w - 1, h - 1]])
    dst = np.float32([[d, 0], [w - 1 - d, 0], [0, h - 1], [w - 1, h - 1]])
    return cv2.getPerspectiveTransform(src, dst)


def degrade(
    img: GrayImage,
    spec: DegradationSpec,
    rotation_radians_per_unit: float = ROTATION_RADIANS_PER_UNIT,
) -> GrayImage:
    """Apply one parameterized degradation; output keeps the input size."""
    kind, lam = spec.kind, spec.strength
    if kind is DegradationKind.JPEG:
        return jpeg_roundtrip(img, jpeg_quality(lam))
    if kind is DegradationKind.ANISOTROPIC_AFFINE:
        return _warp_affine(img, anisotropic_affine_matrix(img, lam))
    if kind is DegradationKind.SHEAR:
        return _warp_affine(img, shear_matrix(img, lam))
    if kind is DegradationKind.ROTATION:
        return _warp_affine(img, rotation_matrix(img, lam, rotation_radians_per_unit))
    if kind is DegradationKind.PERSPECTIVE:
        return _warp_perspective(img, perspective_matrix(img, lam))
    raise ParameterError(f"unhandled degradation kind {kind}")
