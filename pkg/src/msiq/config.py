"""Run configuration shared by the harness, the CLI, and the service.

A config snapshot travels inside every report so results are
self-describing: it pins the descriptor protocol (order, scheme), the
strength and scale grids, and the conventions that silently shape
numbers (rotation-angle mapping, warp border policy, JPEG quality
mapping, SSIM constants, luma weights).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .baselines import ssim_params_dict
from .errors import ParameterError
from .image import LUMA_WEIGHTS
from .moments import DEFAULT_ORDER, DEFAULT_SCHEME, MomentScheme
from .transforms import (
    BORDER_FILL,
    DEFAULT_LAMBDA_GRID,
    JPEG_QUALITY_SLOPE,
    ROTATION_RADIANS_PER_UNIT,
)

DEFAULT_EXP1_SCALES = (0.5, 0.75, 1.5, 2.0, 3.0)
DEFAULT_SR_SCALES = (2.0, 3.0, 4.0)


#: Metric column names of the two descriptor-distance variants.
BOTH_VARIANTS = ("msiq_rmse", "msiq_w")


@dataclass(frozen=True)
class RunConfig:
    order: int = DEFAULT_ORDER
    scheme: MomentScheme = DEFAULT_SCHEME
    variants: tuple[str, ...] = BOTH_VARIANTS
    lambdas: tuple[float, ...] = DEFAULT_LAMBDA_GRID
    exp1_scales: tuple[float, ...] = DEFAULT_EXP1_SCALES
    sr_scales: tuple[float, ...] = DEFAULT_SR_SCALES
    jobs: int = 1
    rotation_radians_per_unit: float = ROTATION_RADIANS_PER_UNIT
    ablation_orders: tuple[int, ...] = tuple(range(3, 13))
    image_source: str = "synthetic"
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "scheme", MomentScheme.parse(self.scheme))
        bad = [v for v in self.variants if v not in BOTH_VARIANTS]
        if bad or not self.variants:
            raise ParameterError(
                f"variants must be a nonempty subset of {BOTH_VARIANTS}, got {self.variants}"
            )

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "scheme": self.scheme.value,
            "variants": list(self.variants),
            "lambdas": list(self.lambdas),
            "exp1_scales": list(self.exp1_scales),
            "sr_scales": list(self.sr_scales),
            "jobs": self.jobs,
            "rotation_radians_per_unit": self.rotation_radians_per_unit,
            "ablation_orders": list(self.ablation_orders),
            "image_source": self.image_source,
            "warp_border_fill": BORDER_FILL,
            "warp_sampling": "bicubic inverse map",
            "jpeg_quality_mapping": f"max(1, round(100 - {JPEG_QUALITY_SLOPE:g} * strength))",
            "ssim": ssim_params_dict(),
            "luma_weights": list(LUMA_WEIGHTS),
            "notes": list(self.notes),
        }
