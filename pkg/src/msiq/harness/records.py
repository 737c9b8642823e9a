"""Experiment record schema and report serialization.

Records are flat rows keyed by (image, method, scale, degradation,
strength, metric). The CSV header is fixed:

    image_id,sr_method,scale,degradation,lambda,metric,value

Floats are written with 9 significant digits; an infinite PSNR is the
literal ``inf`` and an undefined value the literal ``undefined``. The
JSON report carries ``{config, records, summary}`` with the same field
names and the same two literals (JSON has no portable Infinity).

Record lists are always sorted by the canonical key before writing, so
reports are byte-identical regardless of how many workers produced the
rows.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from ..errors import IoError, ParameterError

CSV_HEADER = ("image_id", "sr_method", "scale", "degradation", "lambda", "metric", "value")

METRIC_NAMES = ("psnr", "ssim", "msiq_rmse", "msiq_w")


@dataclass(frozen=True)
class ExperimentRecord:
    image_id: str
    sr_method: str
    scale: "float | None"
    degradation: str
    lam: float
    metric: str
    value: "float | None"  # None means undefined; math.inf allowed for psnr only

    def __post_init__(self):
        if self.metric not in METRIC_NAMES:
            raise ParameterError(f"unknown metric name {self.metric!r}")
        if self.value is not None and math.isinf(self.value) and self.metric != "psnr":
            raise ParameterError(f"infinite value only allowed for psnr, got {self.metric}")

    def sort_key(self):
        return (
            self.image_id,
            self.sr_method,
            -1.0 if self.scale is None else self.scale,
            self.degradation,
            self.lam,
            self.metric,
        )


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _fmt_value(value: "float | None") -> str:
    if value is None:
        return "undefined"
    if math.isinf(value):
        return "inf"
    return _fmt(value)


def _record_row(r: ExperimentRecord) -> tuple:
    return (
        r.image_id,
        r.sr_method,
        "" if r.scale is None else _fmt(r.scale),
        r.degradation,
        _fmt(r.lam),
        r.metric,
        _fmt_value(r.value),
    )


def record_to_json_dict(r: ExperimentRecord) -> dict:
    value: "float | str | None"
    if r.value is None:
        value = "undefined"
    elif math.isinf(r.value):
        value = "inf"
    else:
        value = r.value
    return {
        "image_id": r.image_id,
        "sr_method": r.sr_method,
        "scale": r.scale,
        "degradation": r.degradation,
        "lambda": r.lam,
        "metric": r.metric,
        "value": value,
    }


def record_from_json_dict(obj: dict) -> ExperimentRecord:
    raw = obj["value"]
    if raw == "undefined":
        value = None
    elif raw == "inf":
        value = math.inf
    else:
        value = float(raw)
    scale = obj["scale"]
    return ExperimentRecord(
        image_id=obj["image_id"],
        sr_method=obj["sr_method"],
        scale=None if scale is None else float(scale),
        degradation=obj["degradation"],
        lam=float(obj["lambda"]),
        metric=obj["metric"],
        value=value,
    )


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    config: dict
    records: tuple[ExperimentRecord, ...]
    summary: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.records:
            writer.writerow(_record_row(r))
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "experiment": self.name,
            "config": self.config,
            "records": [record_to_json_dict(r) for r in self.records],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, allow_nan=False)

    def write_csv(self, path) -> None:
        _write_text(path, self.to_csv())

    def write_json(self, path) -> None:
        _write_text(path, self.to_json() + "\n")


def sort_records(records) -> tuple[ExperimentRecord, ...]:
    return tuple(sorted(records, key=ExperimentRecord.sort_key))


def _write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_records_json(path) -> list[ExperimentRecord]:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return [record_from_json_dict(r) for r in obj["records"]]
