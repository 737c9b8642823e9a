"""Experiment runners: reproducible batch protocols over image sets.

Five protocols are provided:

* ``run_exp1``          -- uniform-rescale stability of the descriptor
  distance at native sizes, next to the instability of PSNR/SSIM when a
  scaled copy is forcibly returned to the reference grid;
* ``run_exp2``          -- controlled degradations on the originals:
  tracking ability and geometric/JPEG specificity;
* ``run_controlled_sr`` -- the same degradations applied after a
  downsample/upsample reconstruction stage;
* ``run_benchmark_dir`` -- ``run_controlled_sr`` over a user directory;
* ``run_ablation``      -- descriptor-order sweep: numerical health,
  entry magnitudes, and rank agreement with the pixel baselines.

Each runner returns an :class:`ExperimentReport` whose summary is a
pure function of its records (the ablation additionally carries
descriptor statistics computed during the run). Work units are
independent trajectories; records are sorted canonically so output is
byte-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Mapping, Sequence

import numpy as np

from ..baselines import psnr, ssim
from ..compare import metric_vector
from ..config import RunConfig
from ..errors import ParameterError, UndefinedCorrelationError
from ..image import GrayImage
from ..metric import msiq_rmse
from ..moments import descriptor
from ..stats import (
    METRIC_POLARITIES,
    delta_m,
    signed_tracking,
    spearman,
    specificity_r,
)
from ..transforms import (
    ALL_DEGRADATION_KINDS,
    GEOMETRIC_KINDS,
    RETURN_METHODS,
    DegradationKind,
    DegradationSpec,
    ResizeMethod,
    degrade,
    resize,
    resize_to,
)
from .records import ExperimentRecord, ExperimentReport, sort_records
from .testset import load_images_from_dir

MSIQ_METRICS = ("msiq_rmse", "msiq_w")
ALL_METRICS = ("psnr", "ssim") + MSIQ_METRICS

GEOMETRIC_KIND_NAMES = tuple(k.value for k in GEOMETRIC_KINDS)


def _require_images(images: Mapping[str, GrayImage]) -> None:
    if not images:
        raise ParameterError("experiment needs at least one image")


def _parallel(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _fmt_key(x: float) -> str:
    return f"{x:.9g}"


def _stats_block(values: Sequence[float]) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    return {
        "mean": float(arr.mean()),
        "median": float(np.median(arr)),
        "min": float(arr.min()),
        "max": float(arr.max()),
        "count": int(arr.size),
    }


# ---------------------------------------------------------------------------
# Experiment 1: rescale stability vs forced-resizing instability
# ---------------------------------------------------------------------------


def run_exp1(
    images: Mapping[str, GrayImage], config: RunConfig = RunConfig()
) -> ExperimentReport:
    """Scale stability of the descriptor distance, and PSNR/SSIM spread
    under forced return to the reference grid.

    For every image, scale, and generator method the scaled copy is
    scored against the original at native sizes (descriptor distance
    only). PSNR/SSIM are then computed after forcibly resizing the copy
    back with each return method; those rows carry the combined method
    id ``generator+return``.
    """
    _require_images(images)
    gt_desc = {
        name: descriptor(img, config.order, config.scheme) for name, img in images.items()
    }

    units = [
        (name, gen, s)
        for name in images
        for gen in ResizeMethod
        for s in config.exp1_scales
    ]

    def work(unit) -> list[ExperimentRecord]:
        name, gen, s = unit
        img = images[name]
        scaled = resize(img, s, gen)
        rows = [
            ExperimentRecord(
                image_id=name,
                sr_method=gen.value,
                scale=float(s),
                degradation="none",
                lam=0.0,
                metric="msiq_rmse",
                value=msiq_rmse(
                    gt_desc[name], descriptor(scaled, config.order, config.scheme)
                ),
            )
        ]
        for ret in RETURN_METHODS:
            returned = resize_to(scaled, img.height, img.width, ret)
            combined = f"{gen.value}+{ret.value}"
            rows.append(
                ExperimentRecord(name, combined, float(s), "none", 0.0, "psnr", psnr(img, returned))
            )
            rows.append(
                ExperimentRecord(name, combined, float(s), "none", 0.0, "ssim", ssim(img, returned))
            )
        return rows

    records = sort_records(r for rows in _parallel(work, units, config.jobs) for r in rows)
    summary = summarize_exp1(records)
    return ExperimentReport("exp1", config.as_dict(), records, summary)


def summarize_exp1(records: Sequence[ExperimentRecord]) -> dict:
    """Per-generator descriptor-distance statistics and forced-resizing
    spreads (finite PSNR only; infinite cases counted separately)."""
    msiq_by_gen: dict[str, list[float]] = {}
    by_pair: dict[tuple, dict[str, dict[str, float]]] = {}
    for r in records:
        if r.metric == "msiq_rmse" and "+" not in r.sr_method:
            msiq_by_gen.setdefault(r.sr_method, []).append(r.value)
        elif "+" in r.sr_method:
            gen, ret = r.sr_method.split("+", 1)
            cell = by_pair.setdefault((r.image_id, gen, r.scale), {"psnr": {}, "ssim": {}})
            cell[r.metric][ret] = r.value

    spreads: dict[str, dict[str, list[float]]] = {}
    inf_counts: dict[str, int] = {}
    for (image_id, gen, scale), cell in sorted(by_pair.items()):
        psnr_vals = list(cell["psnr"].values())
        finite = [v for v in psnr_vals if math.isfinite(v)]
        inf_counts[gen] = inf_counts.get(gen, 0) + sum(1 for v in psnr_vals if math.isinf(v))
        bucket = spreads.setdefault(gen, {"psnr": [], "ssim": []})
        if len(finite) >= 2:
            bucket["psnr"].append(max(finite) - min(finite))
        ssim_vals = list(cell["ssim"].values())
        if len(ssim_vals) >= 2:
            bucket["ssim"].append(max(ssim_vals) - min(ssim_vals))

    per_gen = {}
    all_psnr_spreads: list[float] = []
    for gen in sorted(set(msiq_by_gen) | set(spreads)):
        entry: dict = {}
        if gen in msiq_by_gen:
            entry["msiq_rmse"] = _stats_block(msiq_by_gen[gen])
        if gen in spreads:
            ps, ss = spreads[gen]["psnr"], spreads[gen]["ssim"]
            all_psnr_spreads.extend(ps)
            entry["psnr_spread"] = _stats_block(ps) if ps else None
            entry["ssim_spread"] = _stats_block(ss) if ss else None
            entry["inf_psnr_count"] = inf_counts.get(gen, 0)
        per_gen[gen] = entry

    return {
        "per_scaling_method": per_gen,
        "overall": {
            "median_finite_psnr_spread": (
                float(np.median(all_psnr_spreads)) if all_psnr_spreads else None
            ),
            "inf_psnr_total": int(sum(inf_counts.values())),
        },
    }


# ---------------------------------------------------------------------------
# Experiment 2: controlled degradations on the originals
# ---------------------------------------------------------------------------


def run_exp2(
    images: Mapping[str, GrayImage], config: RunConfig = RunConfig()
) -> ExperimentReport:
    """All four metrics for every image x degradation kind x strength."""
    _require_images(images)

    units = [(name, kind) for name in images for kind in ALL_DEGRADATION_KINDS]

    def work(unit) -> list[ExperimentRecord]:
        name, kind = unit
        img = images[name]
        rows = []
        for lam in config.lambdas:
            spec = DegradationSpec(kind, lam)
            degraded = degrade(img, spec, config.rotation_radians_per_unit)
            vec = metric_vector(img, degraded, config.order, config.scheme)
            for metric, value in _metric_items(vec, config):
                rows.append(
                    ExperimentRecord(name, "none", None, kind.value, float(lam), metric, value)
                )
        return rows

    records = sort_records(r for rows in _parallel(work, units, config.jobs) for r in rows)
    summary = summarize_degradation_records(records)
    return ExperimentReport("exp2", config.as_dict(), records, summary)


def _metric_items(vec, config: RunConfig):
    items = [("psnr", vec.psnr), ("ssim", vec.ssim)]
    if "msiq_rmse" in config.variants:
        items.append(("msiq_rmse", vec.msiq_rmse))
    if "msiq_w" in config.variants:
        items.append(("msiq_w", vec.msiq_w))
    return items


def _trajectories(
    records: Sequence[ExperimentRecord], metric: str, geometric_only: bool
) -> dict[tuple, dict[float, float]]:
    """Group metric rows into strength trajectories keyed by everything
    except the strength itself."""
    out: dict[tuple, dict[float, float]] = {}
    for r in records:
        if r.metric != metric or r.degradation == "none":
            continue
        if geometric_only and r.degradation not in GEOMETRIC_KIND_NAMES:
            continue
        key = (r.image_id, r.sr_method, r.scale, r.degradation)
        out.setdefault(key, {})[r.lam] = r.value
    return out


def _present_metrics(records: Sequence[ExperimentRecord]) -> list[str]:
    present = {r.metric for r in records}
    return [m for m in ALL_METRICS if m in present]


def _tracking_summary(records: Sequence[ExperimentRecord]) -> dict:
    out = {}
    for metric in _present_metrics(records):
        polarity = METRIC_POLARITIES[metric]
        rhos: list[float] = []
        undefined = 0
        for key, traj in sorted(_trajectories(records, metric, geometric_only=True).items()):
            lams = sorted(traj)
            values = [traj[l] for l in lams]
            if any(v is None for v in values) or len(lams) < 2:
                undefined += 1
                continue
            try:
                rhos.append(signed_tracking(lams, values, polarity))
            except UndefinedCorrelationError:
                undefined += 1
        out[metric] = {
            "mean_signed_rho": float(np.mean(rhos)) if rhos else None,
            "trajectories": len(rhos),
            "undefined": undefined,
        }
    return out


def _specificity_summary(records: Sequence[ExperimentRecord]) -> dict:
    """Geometric/JPEG separation per metric and strength.

    Increments are averaged over trajectories per kind first; the
    coefficient is the mean geometric increment over the JPEG one.
    """
    lambdas = sorted({r.lam for r in records if r.degradation != "none"})
    positive = [l for l in lambdas if l > 0.0]
    out: dict = {}
    for metric in _present_metrics(records):
        polarity = METRIC_POLARITIES[metric]
        trajs = _trajectories(records, metric, geometric_only=False)
        per_lambda: dict = {}
        for lam in positive:
            kind_deltas: dict[str, list[float]] = {}
            skipped = 0
            for key, traj in sorted(trajs.items()):
                kind = key[3]
                v_lam, v_zero = traj.get(lam), traj.get(0.0)
                if v_lam is None or v_zero is None:
                    skipped += 1
                    continue
                try:
                    d = delta_m(v_lam, v_zero, polarity)
                except ParameterError:
                    skipped += 1
                    continue
                kind_deltas.setdefault(kind, []).append(d)
            mean_delta = {
                kind: float(np.mean(vals)) for kind, vals in sorted(kind_deltas.items())
            }
            geom = [mean_delta[k] for k in GEOMETRIC_KIND_NAMES if k in mean_delta]
            jpeg = mean_delta.get(DegradationKind.JPEG.value)
            cell: dict = {
                "mean_delta": mean_delta,
                "skipped_pairs": skipped,
                "r": None,
                "r_state": "undefined",
                "min_ratio": None,
            }
            if len(geom) == len(GEOMETRIC_KIND_NAMES) and jpeg is not None:
                r = specificity_r(
                    {k: mean_delta[k] for k in GEOMETRIC_KIND_NAMES}, jpeg
                )
                if r is None:
                    cell["r_state"] = "unstable"
                else:
                    cell["r"] = r
                    cell["r_state"] = "ok"
                    cell["min_ratio"] = float(min(g / jpeg for g in geom))
                cell["mean_geometric_delta"] = float(np.mean(geom))
                cell["jpeg_delta"] = jpeg
            per_lambda[_fmt_key(lam)] = cell
        out[metric] = per_lambda
    return out


def summarize_degradation_records(records: Sequence[ExperimentRecord]) -> dict:
    return {
        "tracking": _tracking_summary(records),
        "specificity": _specificity_summary(records),
    }


# ---------------------------------------------------------------------------
# Controlled degradation after a reconstruction stage
# ---------------------------------------------------------------------------


def run_controlled_sr(
    images: Mapping[str, GrayImage],
    config: RunConfig = RunConfig(),
    sr_methods: Sequence[ResizeMethod] = RETURN_METHODS,
) -> ExperimentReport:
    """Downsample (bicubic), reconstruct with each interpolator, apply the
    degradation grid to the reconstruction, and score every pair against
    the pristine original."""
    _require_images(images)
    sr_methods = tuple(ResizeMethod.parse(m) for m in sr_methods)

    units = [
        (name, m, s) for name in images for m in sr_methods for s in config.sr_scales
    ]

    def work(unit) -> list[ExperimentRecord]:
        name, method, s = unit
        img = images[name]
        lr = resize(img, 1.0 / s, ResizeMethod.BICUBIC)
        sr = resize_to(lr, img.height, img.width, method)
        rows = []
        for kind in ALL_DEGRADATION_KINDS:
            for lam in config.lambdas:
                spec = DegradationSpec(kind, lam)
                degraded = degrade(sr, spec, config.rotation_radians_per_unit)
                vec = metric_vector(img, degraded, config.order, config.scheme)
                for metric, value in _metric_items(vec, config):
                    rows.append(
                        ExperimentRecord(
                            name, method.value, float(s), kind.value, float(lam), metric, value
                        )
                    )
        return rows

    records = sort_records(r for rows in _parallel(work, units, config.jobs) for r in rows)
    summary = summarize_controlled(records)
    return ExperimentReport("controlled", config.as_dict(), records, summary)


def summarize_controlled(records: Sequence[ExperimentRecord]) -> dict:
    """Degradation summary plus cross-interpolator stability of the
    descriptor-distance increment at the strongest degradation."""
    summary = summarize_degradation_records(records)
    lambdas = sorted({r.lam for r in records if r.degradation != "none"})
    if not lambdas:
        return summary
    lam_max = lambdas[-1]
    stability: dict = {}
    for metric in (m for m in MSIQ_METRICS if m in _present_metrics(records)):
        trajs = _trajectories(records, metric, geometric_only=True)
        per_kind: dict[str, dict[str, list[float]]] = {}
        for (image_id, method, scale, kind), traj in sorted(trajs.items()):
            if lam_max not in traj or 0.0 not in traj:
                continue
            d = delta_m(traj[lam_max], traj[0.0], METRIC_POLARITIES[metric])
            per_kind.setdefault(kind, {}).setdefault(method, []).append(d)
        table: dict = {}
        for kind, by_method in sorted(per_kind.items()):
            means = {m: float(np.mean(v)) for m, v in sorted(by_method.items())}
            vals = list(means.values())
            mean_all = float(np.mean(vals))
            table[kind] = {
                "delta_by_method": means,
                "relative_spread": (
                    float((max(vals) - min(vals)) / mean_all) if mean_all != 0 else None
                ),
            }
        stability[metric] = table
    summary["stability_at_lambda_max"] = {"lambda": lam_max, "per_metric": stability}
    return summary


def run_benchmark_dir(
    gt_dir, config: RunConfig = RunConfig(), sr_methods: Sequence[ResizeMethod] = RETURN_METHODS
) -> ExperimentReport:
    """Controlled-degradation protocol over every decodable image in a
    directory; identical record schema and summary."""
    images = load_images_from_dir(gt_dir)
    report = run_controlled_sr(images, config, sr_methods)
    return ExperimentReport("benchmark", report.config, report.records, report.summary)


# ---------------------------------------------------------------------------
# Descriptor-order ablation
# ---------------------------------------------------------------------------


def run_ablation(
    images: Mapping[str, GrayImage], config: RunConfig = RunConfig()
) -> ExperimentReport:
    """Sweep the descriptor order over the degradation grid.

    Pixel baselines are order-independent and recorded once under
    method id ``none``; descriptor distances are recorded per order
    under method id ``N=<order>``. The summary adds descriptor entry
    statistics (magnitudes, NaN/Inf health) gathered during the run;
    rank agreements are pure functions of the records.
    """
    _require_images(images)
    orders = tuple(config.ablation_orders)
    if not orders:
        raise ParameterError("ablation needs at least one descriptor order")

    units = [(name, kind) for name in images for kind in ALL_DEGRADATION_KINDS]

    def work(unit):
        name, kind = unit
        img = images[name]
        rows: list[ExperimentRecord] = []
        health: list[tuple[int, bool, bool, float]] = []
        for lam in config.lambdas:
            spec = DegradationSpec(kind, lam)
            degraded = degrade(img, spec, config.rotation_radians_per_unit)
            rows.append(
                ExperimentRecord(name, "none", None, kind.value, float(lam), "psnr", psnr(img, degraded))
            )
            rows.append(
                ExperimentRecord(name, "none", None, kind.value, float(lam), "ssim", ssim(img, degraded))
            )
            for n in orders:
                da = descriptor(img, n, config.scheme)
                db = descriptor(degraded, n, config.scheme)
                vals = db.values()
                health.append(
                    (
                        n,
                        bool(np.isnan(vals).any()),
                        bool(np.isinf(vals).any()),
                        float(np.mean(np.abs(vals))),
                    )
                )
                rows.append(
                    ExperimentRecord(
                        name, f"N={n}", None, kind.value, float(lam), "msiq_rmse", msiq_rmse(da, db)
                    )
                )
        return rows, health

    results = _parallel(work, units, config.jobs)
    records = sort_records(r for rows, _ in results for r in rows)

    # descriptor health per order, pooled over originals and all degraded images
    health_by_n: dict[int, dict] = {
        n: {"nan": False, "inf": False, "abs_sums": []} for n in orders
    }
    for name, img in images.items():
        for n in orders:
            vals = descriptor(img, n, config.scheme).values()
            health_by_n[n]["nan"] |= bool(np.isnan(vals).any())
            health_by_n[n]["inf"] |= bool(np.isinf(vals).any())
            health_by_n[n]["abs_sums"].append(float(np.mean(np.abs(vals))))
    for _, health in results:
        for n, has_nan, has_inf, mean_abs in health:
            health_by_n[n]["nan"] |= has_nan
            health_by_n[n]["inf"] |= has_inf

    descriptor_stats = {
        str(n): {
            "nan": health_by_n[n]["nan"],
            "inf": health_by_n[n]["inf"],
            "mean_abs_entry": float(np.mean(health_by_n[n]["abs_sums"])),
        }
        for n in orders
    }
    summary = summarize_ablation(records, descriptor_stats)
    return ExperimentReport("ablation", config.as_dict(), records, summary)


def summarize_ablation(
    records: Sequence[ExperimentRecord], descriptor_stats: dict
) -> dict:
    """Per-order rank agreement between the descriptor distance and the
    pixel baselines over the whole degradation grid."""
    base: dict[str, dict[tuple, float]] = {"psnr": {}, "ssim": {}}
    per_n: dict[str, dict[tuple, float]] = {}
    for r in records:
        key = (r.image_id, r.degradation, r.lam)
        if r.sr_method == "none" and r.metric in base:
            base[r.metric][key] = r.value
        elif r.sr_method.startswith("N=") and r.metric == "msiq_rmse":
            per_n.setdefault(r.sr_method[2:], {})[key] = r.value

    out: dict = {}
    for n_str, msiq_vals in sorted(per_n.items(), key=lambda kv: int(kv[0])):
        keys = sorted(msiq_vals)
        cell = dict(descriptor_stats.get(n_str, {}))
        for metric in ("psnr", "ssim"):
            paired = [(msiq_vals[k], base[metric][k]) for k in keys if k in base[metric]]
            try:
                rho = spearman([a for a, _ in paired], [b for _, b in paired])
            except (ParameterError, UndefinedCorrelationError):
                rho = None
            cell[f"rho_{metric}"] = rho
        out[n_str] = cell
    return {"per_order": out}


# ---------------------------------------------------------------------------
# Sanity identities
# ---------------------------------------------------------------------------

SANITY_NU00_TOL = 1e-12
SANITY_NU1_TOL = 1e-9
SANITY_SELF_TOL = 1e-12


def verify_sanity(
    images: Mapping[str, GrayImage], config: RunConfig = RunConfig()
) -> list[dict]:
    """Check the algebraic identities nu00 = 1, nu10 = nu01 = 0 and a zero
    self-distance for every image. Failures are results, not errors; a
    degenerate image yields a named failing entry."""
    _require_images(images)
    from ..errors import DegenerateImageError
    from ..moments import normalized_moment

    results: list[dict] = []
    for name, img in sorted(images.items()):
        try:
            nu00 = normalized_moment(img, 0, 0, config.scheme)
            nu10 = normalized_moment(img, 1, 0, config.scheme)
            nu01 = normalized_moment(img, 0, 1, config.scheme)
            d = descriptor(img, config.order, config.scheme)
            self_dist = msiq_rmse(d, d)
        except DegenerateImageError as exc:
            results.append(
                {
                    "image_id": name,
                    "check": "degenerate",
                    "value": None,
                    "threshold": None,
                    "passed": False,
                    "detail": f"DegenerateImageError: {exc}",
                }
            )
            continue
        checks = (
            ("nu00_is_one", abs(nu00 - 1.0), SANITY_NU00_TOL),
            ("nu10_is_zero", abs(nu10), SANITY_NU1_TOL),
            ("nu01_is_zero", abs(nu01), SANITY_NU1_TOL),
            ("self_distance_zero", self_dist, SANITY_SELF_TOL),
        )
        for check, value, tol in checks:
            results.append(
                {
                    "image_id": name,
                    "check": check,
                    "value": value,
                    "threshold": tol,
                    "passed": bool(value <= tol),
                }
            )
    return results
