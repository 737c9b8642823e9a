#!/usr/bin/env python3
"""Regenerate the language-neutral shared test vectors.

The fixture file freezes descriptor entries, metric values, and
degradation outputs for a few small deterministic images. Both test
suites consume it: the Python suite checks the library reproduces the
frozen values, the binding suite checks the service returns the same
numbers over HTTP.

Usage: python scripts/gen_shared_fixtures.py [output_path]
"""

import json
import sys
from pathlib import Path

import numpy as np

from msiq import (
    GrayImage,
    DegradationKind,
    DegradationSpec,
    ResizeMethod,
    degrade,
    descriptor,
    msiq_distance,
    resize,
)


def _ramp8() -> GrayImage:
    data = (np.arange(64, dtype=np.float64).reshape(8, 8)) / 63.0 * 0.9 + 0.05
    return GrayImage(data)


def _blob(n: int) -> GrayImage:
    ii, jj = np.mgrid[0:n, 0:n].astype(np.float64)
    r2 = (ii - n * 0.38) ** 2 + (jj - n * 0.56) ** 2
    return GrayImage(0.08 + 0.84 * np.exp(-r2 / (n * n / 14.0)))


def build() -> dict:
    # the upscale vector uses the larger blob: scale-consistency residuals
    # shrink with image size and the documented magnitude assumes a
    # reasonably sized image
    images = {"ramp8": _ramp8(), "blob16": _blob(16), "blob32": _blob(32)}
    images["blob32_up2"] = resize(images["blob32"], 2.0, ResizeMethod.BICUBIC)

    descriptors = []
    for name, order, scheme in (
        ("ramp8", 4, "raw_grid"),
        ("blob16", 4, "raw_grid"),
        ("blob16", 3, "pixel_center_delta"),
        ("blob16", 4, "pixel_integrated_constant"),
    ):
        d = descriptor(images[name], order, scheme)
        descriptors.append(
            {
                "image": name,
                "order": order,
                "scheme": scheme,
                "entries": [[p, q, v] for p, q, v in d.entries],
            }
        )

    distances = []
    for gt, test, variant in (
        ("blob16", "blob16", "rmse"),
        ("blob16", "blob16", "weighted"),
        ("ramp8", "blob16", "rmse"),
        ("ramp8", "blob16", "weighted"),
        ("blob32", "blob32_up2", "rmse"),
        ("blob32", "blob32_up2", "weighted"),
    ):
        value = msiq_distance(
            descriptor(images[gt], 4, "raw_grid"),
            descriptor(images[test], 4, "raw_grid"),
            variant,
        )
        distances.append(
            {"gt": gt, "test": test, "variant": variant, "order": 4, "value": value}
        )

    degradations = []
    for name, kind, strength in (
        ("blob16", DegradationKind.ROTATION, 0.1),
        ("blob16", DegradationKind.JPEG, 0.2),
        ("blob16", DegradationKind.SHEAR, 0.0),
    ):
        out = degrade(images[name], DegradationSpec(kind, strength))
        degradations.append(
            {
                "image": name,
                "kind": kind.value,
                "strength": strength,
                "output": out.data.tolist(),
            }
        )

    errors = [
        {
            "case": "all-black image has no descriptor",
            "image": [[0.0] * 8 for _ in range(8)],
            "error": "DegenerateImageError",
        },
        {
            "case": "unknown degradation kind",
            "kind": "melt",
            "error": "ParameterError",
        },
    ]

    return {
        "note": "frozen shared test vectors; regenerate with scripts/gen_shared_fixtures.py",
        "tolerance": 1e-12,
        "images": {k: v.data.tolist() for k, v in images.items()},
        "descriptors": descriptors,
        "distances": distances,
        "degradations": degradations,
        "errors": errors,
    }


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("fixtures/shared_vectors.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
