"""FastAPI service wrapping the core package.

Every endpoint is a thin boundary over the library: payload conversion
in, library call, payload conversion out. Package error types surface
as HTTP errors whose detail starts with the error class name, so
clients can match on it.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..compare import SIZE_MISMATCH_NOTE, metric_vector
from ..config import RunConfig
from ..errors import (
    DecodeError,
    DegenerateImageError,
    DescriptorMismatchError,
    IoError,
    MsiqError,
    ParameterError,
    ShapeError,
)
from ..harness import (
    load_images_from_dir,
    run_ablation,
    run_benchmark_dir,
    run_controlled_sr,
    run_exp1,
    run_exp2,
    standard_test_images,
    verify_sanity,
)
from ..image import GrayImage, load_image
from ..metric import MsiqVariant, msiq_distance
from ..moments import MomentScheme, descriptor
from ..transforms import DegradationKind, DegradationSpec, degrade
from .schemas import (
    CompareRequest,
    CompareResponse,
    DegradeRequest,
    DegradeResponse,
    DescriptorRequest,
    DescriptorResponse,
    ExperimentRequest,
    ExperimentResponse,
    HealthResponse,
    ImagePayload,
    MsiqRequest,
    MsiqResponse,
    SanityResponse,
)

_ERROR_STATUS = {
    ParameterError: 422,
    ShapeError: 422,
    DegenerateImageError: 422,
    DescriptorMismatchError: 422,
    DecodeError: 415,
    IoError: 400,
}

_RUNNERS = {
    "exp1": run_exp1,
    "exp2": run_exp2,
    "controlled": run_controlled_sr,
    "ablation": run_ablation,
}


def _payload_to_image(payload: ImagePayload) -> GrayImage:
    if payload.path is not None:
        return load_image(payload.path)
    return GrayImage.from_array(np.asarray(payload.data, dtype=np.float64))


def _request_images(req: ExperimentRequest):
    if req.images_dir is not None:
        return load_images_from_dir(req.images_dir)
    return standard_test_images(req.source)


def _request_config(req: ExperimentRequest, experiment: str) -> RunConfig:
    config = RunConfig(
        order=req.order,
        scheme=MomentScheme.parse(req.scheme),
        jobs=req.jobs,
        image_source=req.source,
    )
    if req.lambdas:
        config = dataclasses.replace(config, lambdas=tuple(req.lambdas))
    if req.scales:
        field = "exp1_scales" if experiment == "exp1" else "sr_scales"
        config = dataclasses.replace(config, **{field: tuple(req.scales)})
    return config


def create_app() -> FastAPI:
    app = FastAPI(title="msiq", version=__version__)

    @app.exception_handler(MsiqError)
    async def _msiq_error(request: Request, exc: MsiqError):
        status = _ERROR_STATUS.get(type(exc), 400)
        return JSONResponse(
            status_code=status,
            content={"detail": f"{type(exc).__name__}: {exc}"},
        )

    @app.get("/healthz", response_model=HealthResponse)
    def healthz():
        return HealthResponse(status="ok", version=__version__)

    @app.get("/config")
    def config():
        return RunConfig().as_dict()

    @app.post("/descriptor", response_model=DescriptorResponse)
    def post_descriptor(req: DescriptorRequest):
        img = _payload_to_image(req.image)
        d = descriptor(img, req.order, MomentScheme.parse(req.scheme))
        return DescriptorResponse(
            order=d.order, scheme=d.scheme.value, entries=list(d.entries)
        )

    @app.post("/msiq", response_model=MsiqResponse)
    def post_msiq(req: MsiqRequest):
        scheme = MomentScheme.parse(req.scheme)
        variant = MsiqVariant.parse(req.variant)
        da = descriptor(_payload_to_image(req.gt), req.order, scheme)
        db = descriptor(_payload_to_image(req.test), req.order, scheme)
        return MsiqResponse(
            value=msiq_distance(da, db, variant),
            variant=variant.value,
            order=req.order,
            scheme=scheme.value,
        )

    @app.post("/degrade", response_model=DegradeResponse)
    def post_degrade(req: DegradeRequest):
        img = _payload_to_image(req.image)
        spec = DegradationSpec(DegradationKind.parse(req.kind), req.strength)
        out = degrade(img, spec)
        return DegradeResponse(height=out.height, width=out.width, data=out.data.tolist())

    @app.post("/compare", response_model=CompareResponse)
    def post_compare(req: CompareRequest):
        gt = _payload_to_image(req.gt)
        test = _payload_to_image(req.test)
        vec = metric_vector(gt, test, req.order, MomentScheme.parse(req.scheme))
        if vec.sizes_match:
            return CompareResponse(
                msiq_rmse=vec.msiq_rmse,
                msiq_w=vec.msiq_w,
                psnr="inf" if math.isinf(vec.psnr) else repr(vec.psnr),
                ssim=vec.ssim,
            )
        return CompareResponse(
            msiq_rmse=vec.msiq_rmse, msiq_w=vec.msiq_w, note=SIZE_MISMATCH_NOTE
        )

    @app.post("/sanity", response_model=SanityResponse)
    def post_sanity(req: ExperimentRequest):
        images = _request_images(req)
        results = verify_sanity(images, _request_config(req, "sanity"))
        return SanityResponse(
            results=results, passed=all(r["passed"] for r in results)
        )

    @app.post("/experiments/{name}", response_model=ExperimentResponse)
    def post_experiment(name: str, req: ExperimentRequest):
        config = _request_config(req, name)
        if name == "benchmark":
            if not req.images_dir:
                raise ParameterError("benchmark requires 'images_dir'")
            report = run_benchmark_dir(req.images_dir, config)
        elif name in _RUNNERS:
            report = _RUNNERS[name](_request_images(req), config)
        else:
            raise ParameterError(
                f"unknown experiment {name!r}; valid: exp1, exp2, controlled, "
                f"benchmark, ablation (plus POST /sanity)"
            )
        payload = report.to_json_dict()
        return ExperimentResponse(
            experiment=payload["experiment"],
            config=payload["config"],
            records=payload["records"],
            summary=payload["summary"],
        )

    return app


app = create_app()
