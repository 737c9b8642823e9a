"""msiq: scale-invariant geometric image fidelity metric and benchmark kit.

The package compares images through normalized central moment
descriptors, which are invariant to translation and uniform scaling, so
a reference and a test image never need to share a pixel grid. It ships
the two descriptor distances, PSNR/SSIM baselines, five parameterized
degradation families, batch experiment runners, a CLI, and a FastAPI
service exposing the core operations.
"""

from .baselines import psnr, ssim
from .compare import MetricVector, metric_vector
from .config import RunConfig
from .errors import (
    DecodeError,
    DegenerateImageError,
    DescriptorMismatchError,
    IoError,
    MsiqError,
    ParameterError,
    ShapeError,
    UndefinedCorrelationError,
)
from .image import GrayImage, load_image, save_image, to_gray
from .metric import MsiqVariant, default_weights, msiq_distance, msiq_rmse, msiq_weighted
from .moments import (
    MomentDescriptor,
    MomentScheme,
    central_moment,
    centroid,
    descriptor,
    informative_indices,
    normalized_moment,
    raw_moment,
)
from .stats import (
    METRIC_POLARITIES,
    MetricPolarity,
    delta_m,
    signed_tracking,
    spearman,
    specificity_r,
)
from .transforms import (
    DegradationKind,
    DegradationSpec,
    ResizeMethod,
    degrade,
    resize,
    resize_to,
)

__version__ = "0.1.0"

__all__ = [
    "DecodeError",
    "DegenerateImageError",
    "DegradationKind",
    "DegradationSpec",
    "DescriptorMismatchError",
    "GrayImage",
    "IoError",
    "METRIC_POLARITIES",
    "MetricPolarity",
    "MetricVector",
    "MomentDescriptor",
    "MomentScheme",
    "MsiqError",
    "MsiqVariant",
    "ParameterError",
    "ResizeMethod",
    "RunConfig",
    "ShapeError",
    "UndefinedCorrelationError",
    "central_moment",
    "centroid",
    "default_weights",
    "degrade",
    "delta_m",
    "descriptor",
    "informative_indices",
    "load_image",
    "metric_vector",
    "msiq_distance",
    "msiq_rmse",
    "msiq_weighted",
    "normalized_moment",
    "psnr",
    "raw_moment",
    "resize",
    "resize_to",
    "save_image",
    "signed_tracking",
    "spearman",
    "specificity_r",
    "ssim",
    "to_gray",
    "__version__",
]
