"""Command-line surface: metric computation, degradation generation,
experiment runners, and the HTTP service launcher.

Exit codes: 0 success, 1 usage error, 2 I/O or decode error,
3 degenerate input image.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys

from .compare import SIZE_MISMATCH_NOTE, metric_vector
from .config import RunConfig
from .errors import (
    DecodeError,
    DegenerateImageError,
    IoError,
    MsiqError,
    ParameterError,
)
from .harness import (
    load_images_from_dir,
    run_ablation,
    run_benchmark_dir,
    run_controlled_sr,
    run_exp1,
    run_exp2,
    standard_test_images,
    verify_sanity,
)
from .image import load_image, save_image
from .moments import MomentScheme
from .transforms import DegradationKind, DegradationSpec, degrade

EXPERIMENTS = ("exp1", "exp2", "controlled", "benchmark", "ablation", "sanity")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse failures through our exit-code contract (1, not 2)
    def error(self, message):
        raise _UsageError(f"{message}\n\n{self.format_usage()}")


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ParameterError(f"bad numeric list {text!r}: {exc}") from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="msiq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=4, help="descriptor order N (default 4)")
    common.add_argument(
        "--scheme",
        default="raw_grid",
        help="moment scheme: raw_grid | pixel_center_delta | pixel_integrated_constant",
    )

    p = sub.add_parser("compute", parents=[common], help="score one image pair")
    p.add_argument("gt", help="reference image path")
    p.add_argument("test", help="test image path")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("degrade", help="apply one degradation and write the result")
    p.add_argument("input", help="input image path")
    p.add_argument("output", help="output image path (.png or .pgm)")
    p.add_argument("--kind", required=True, help="degradation kind")
    p.add_argument("--strength", type=float, required=True, help="strength in [0, 1)")
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("experiment", parents=[common], help="run a batch experiment")
    p.add_argument("name", choices=EXPERIMENTS)
    p.add_argument(
        "--variant",
        choices=("rmse", "weighted", "both"),
        default="both",
        help="descriptor-distance variant(s) to record (default both)",
    )
    p.add_argument("--images", help="directory of images (default: bundled synthetic set)")
    p.add_argument(
        "--source",
        choices=("synthetic", "skimage"),
        default="synthetic",
        help="bundled set to use when --images is not given",
    )
    p.add_argument("--lambdas", help="comma-separated strength grid")
    p.add_argument("--scales", help="comma-separated scale grid")
    p.add_argument("--out", help="output path prefix (default msiq_<name>_report)")
    p.add_argument("--format", choices=("csv", "json", "both"), default="both")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.set_defaults(func=cmd_serve)

    return parser


def _print_config(config: RunConfig) -> None:
    print("effective config:")
    for key, value in config.as_dict().items():
        print(f"  {key}: {value}")


def cmd_compute(args) -> int:
    gt = load_image(args.gt)
    test = load_image(args.test)
    vec = metric_vector(gt, test, args.order, MomentScheme.parse(args.scheme))
    print(f"msiq_rmse {vec.msiq_rmse:.9g}")
    print(f"msiq_w {vec.msiq_w:.9g}")
    if vec.sizes_match:
        print(f"psnr {'inf' if math.isinf(vec.psnr) else f'{vec.psnr:.9g}'}")
        print(f"ssim {vec.ssim:.9g}")
    else:
        print(f"psnr {SIZE_MISMATCH_NOTE}")
        print(f"ssim {SIZE_MISMATCH_NOTE}")
    return 0


def cmd_degrade(args) -> int:
    img = load_image(args.input)
    spec = DegradationSpec(DegradationKind.parse(args.kind), args.strength)
    save_image(degrade(img, spec), args.output)
    print(f"wrote {args.output}")
    return 0


def cmd_experiment(args) -> int:
    variants = {
        "rmse": ("msiq_rmse",),
        "weighted": ("msiq_w",),
        "both": ("msiq_rmse", "msiq_w"),
    }[args.variant]
    config = RunConfig(
        order=args.order,
        scheme=MomentScheme.parse(args.scheme),
        variants=variants,
        jobs=args.jobs,
        image_source="directory" if args.images else args.source,
    )
    if args.lambdas:
        config = dataclasses.replace(config, lambdas=_parse_float_list(args.lambdas))
    if args.scales:
        field = "exp1_scales" if args.name == "exp1" else "sr_scales"
        config = dataclasses.replace(config, **{field: _parse_float_list(args.scales)})
    _print_config(config)

    if args.name == "sanity":
        images = (
            load_images_from_dir(args.images) if args.images else standard_test_images(args.source)
        )
        results = verify_sanity(images, config)
        for r in results:
            state = "PASS" if r["passed"] else "FAIL"
            detail = r.get("detail", "")
            value = "" if r["value"] is None else f" value={r['value']:.3e}"
            print(f"[{state}] {r['image_id']}: {r['check']}{value} {detail}".rstrip())
        print(f"sanity: {sum(r['passed'] for r in results)}/{len(results)} checks passed")
        return 0

    if args.name == "benchmark":
        if not args.images:
            raise ParameterError("experiment benchmark requires --images DIR")
        report = run_benchmark_dir(args.images, config)
    else:
        images = (
            load_images_from_dir(args.images) if args.images else standard_test_images(args.source)
        )
        runner = {
            "exp1": run_exp1,
            "exp2": run_exp2,
            "controlled": run_controlled_sr,
            "ablation": run_ablation,
        }[args.name]
        report = runner(images, config)

    prefix = args.out or f"msiq_{args.name}_report"
    written = []
    if args.format in ("csv", "both"):
        report.write_csv(f"{prefix}.csv")
        written.append(f"{prefix}.csv")
    if args.format in ("json", "both"):
        report.write_json(f"{prefix}.json")
        written.append(f"{prefix}.json")

    _print_summary(args.name, report.summary)
    for path in written:
        print(f"wrote {path}")
    return 0


def _print_summary(name: str, summary: dict) -> None:
    print(f"\n{name} summary:")
    if name == "exp1":
        print(f"{'scaling':12s} {'msiq mean':>12s} {'msiq max':>12s} "
              f"{'dPSNR med':>10s} {'dSSIM max':>10s} {'infPSNR':>8s}")
        for gen, cell in summary["per_scaling_method"].items():
            msiq_block = cell.get("msiq_rmse")
            ps = cell.get("psnr_spread")
            ss = cell.get("ssim_spread")
            print(
                f"{gen:12s} "
                f"{msiq_block['mean']:12.3e} {msiq_block['max']:12.3e} "
                f"{(ps['median'] if ps else float('nan')):10.2f} "
                f"{(ss['max'] if ss else float('nan')):10.4f} "
                f"{cell.get('inf_psnr_count', 0):8d}"
            )
        overall = summary["overall"]
        print(f"median finite PSNR spread: {overall['median_finite_psnr_spread']:.2f} dB, "
              f"infinite PSNR cases: {overall['inf_psnr_total']}")
        return
    if name == "ablation":
        print(f"{'N':>3s} {'NaN':>5s} {'Inf':>5s} {'mean|entry|':>12s} "
              f"{'rho_psnr':>9s} {'rho_ssim':>9s}")
        for n, cell in summary["per_order"].items():
            rp = float("nan") if cell["rho_psnr"] is None else cell["rho_psnr"]
            rs = float("nan") if cell["rho_ssim"] is None else cell["rho_ssim"]
            print(f"{n:>3s} {str(cell['nan']):>5s} {str(cell['inf']):>5s} "
                  f"{cell['mean_abs_entry']:12.6f} {rp:9.4f} {rs:9.4f}")
        return
    # degradation-grid experiments
    tracking = summary.get("tracking", {})
    specificity = summary.get("specificity", {})
    print(f"{'metric':10s} {'signed rho':>10s}" + "".join(
        f" {'R(' + lam + ')':>12s}" for lam in _spec_lambdas(specificity)
    ))
    for metric, cell in tracking.items():
        rho = cell["mean_signed_rho"]
        row = f"{metric:10s} {(float('nan') if rho is None else rho):10.3f}"
        for lam in _spec_lambdas(specificity):
            r = specificity.get(metric, {}).get(lam, {})
            value = r.get("r")
            row += f" {(float('nan') if value is None else value):12.2f}"
        print(row)
    stability = summary.get("stability_at_lambda_max")
    if stability:
        print(f"cross-method stability at strength {stability['lambda']:g} "
              f"(relative spread of descriptor-distance increments):")
        for metric, table in stability["per_metric"].items():
            for kind, cell in table.items():
                spread = cell["relative_spread"]
                print(f"  {metric} {kind}: {(float('nan') if spread is None else spread):.3f}")


def _spec_lambdas(specificity: dict) -> list[str]:
    for cell in specificity.values():
        return list(cell.keys())
    return []


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("run 'msiq --help' for usage", file=sys.stderr)
        return 1
    except (IoError, DecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateImageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MsiqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
