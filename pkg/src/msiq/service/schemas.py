"""Pydantic request/response models for the HTTP service.

Images cross the boundary either as a row-major 2D array of
intensities in [0, 1] or as a server-local file path; exactly one of
the two must be given.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class ImagePayload(BaseModel):
    data: Optional[list[list[float]]] = None
    path: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.data is None) == (self.path is None):
            raise ValueError("provide exactly one of 'data' or 'path'")
        if self.data is not None:
            if not self.data or not self.data[0]:
                raise ValueError("'data' must be a nonempty 2D array")
            width = len(self.data[0])
            for row in self.data:
                if len(row) != width:
                    raise ValueError("'data' rows must all have the same length")
                for value in row:
                    if not (0.0 <= value <= 1.0):
                        raise ValueError(
                            f"intensity {value} outside [0, 1]; "
                            "normalize the image before sending it"
                        )
        return self


class DescriptorRequest(BaseModel):
    image: ImagePayload
    order: int = Field(default=4, ge=2)
    scheme: str = "raw_grid"


class DescriptorResponse(BaseModel):
    order: int
    scheme: str
    entries: list[tuple[int, int, float]]


class MsiqRequest(BaseModel):
    gt: ImagePayload
    test: ImagePayload
    variant: str = "rmse"
    order: int = Field(default=4, ge=2)
    scheme: str = "raw_grid"


class MsiqResponse(BaseModel):
    value: float
    variant: str
    order: int
    scheme: str


class DegradeRequest(BaseModel):
    image: ImagePayload
    kind: str
    strength: float = Field(ge=0.0, lt=1.0)


class DegradeResponse(BaseModel):
    height: int
    width: int
    data: list[list[float]]


class CompareRequest(BaseModel):
    gt: ImagePayload
    test: ImagePayload
    order: int = Field(default=4, ge=2)
    scheme: str = "raw_grid"


class CompareResponse(BaseModel):
    msiq_rmse: float
    msiq_w: float
    psnr: Optional[str] = None  # decimal string, "inf", or null on size mismatch
    ssim: Optional[float] = None
    note: Optional[str] = None


class ExperimentRequest(BaseModel):
    source: Literal["synthetic", "skimage"] = "synthetic"
    images_dir: Optional[str] = None
    order: int = Field(default=4, ge=2)
    scheme: str = "raw_grid"
    lambdas: Optional[list[float]] = None
    scales: Optional[list[float]] = None
    jobs: int = Field(default=1, ge=1)


class ExperimentResponse(BaseModel):
    experiment: str
    config: dict
    records: list[dict]
    summary: dict


class SanityResponse(BaseModel):
    results: list[dict]
    passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
