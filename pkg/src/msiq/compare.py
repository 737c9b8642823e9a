"""Per-pair metric vector: both descriptor distances plus the pixel baselines.

The descriptor distances never require the two images to share a pixel
grid; PSNR and SSIM are computed only when the sizes already match and
are reported as absent otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .baselines import psnr, ssim
from .image import GrayImage
from .metric import msiq_rmse, msiq_weighted
from .moments import DEFAULT_ORDER, DEFAULT_SCHEME, MomentScheme, descriptor

SIZE_MISMATCH_NOTE = "n/a (size mismatch; MSIQ is resizing-free)"


@dataclass(frozen=True)
class MetricVector:
    """Metric values for one (reference, test) pair.

    ``psnr``/``ssim`` are ``None`` when the pair differs in size;
    ``psnr`` may be ``math.inf`` for identical pixel content.
    """

    msiq_rmse: float
    msiq_w: float
    psnr: "float | None"
    ssim: "float | None"

    @property
    def sizes_match(self) -> bool:
        return self.ssim is not None


def metric_vector(
    gt: GrayImage,
    test: GrayImage,
    order: int = DEFAULT_ORDER,
    scheme: "MomentScheme | str" = DEFAULT_SCHEME,
) -> MetricVector:
    """Compute all four metrics for a pair; baselines only on matching sizes."""
    scheme = MomentScheme.parse(scheme)
    da = descriptor(gt, order, scheme)
    db = descriptor(test, order, scheme)
    if gt.shape == test.shape:
        return MetricVector(
            msiq_rmse=msiq_rmse(da, db),
            msiq_w=msiq_weighted(da, db),
            psnr=psnr(gt, test),
            ssim=ssim(gt, test),
        )
    return MetricVector(
        msiq_rmse=msiq_rmse(da, db),
        msiq_w=msiq_weighted(da, db),
        psnr=None,
        ssim=None,
    )
