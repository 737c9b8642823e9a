"""The library must reproduce the frozen shared test vectors exactly.

The same file drives the HTTP-binding parity suite, so a drift here
means the two components no longer agree.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from msiq import (
    DegenerateImageError,
    DegradationKind,
    DegradationSpec,
    GrayImage,
    ParameterError,
    degrade,
    descriptor,
    msiq_distance,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "shared_vectors.json"


@pytest.fixture(scope="module")
def vectors():
    return json.loads(FIXTURES.read_text())


@pytest.fixture(scope="module")
def images(vectors):
    return {k: GrayImage(np.array(v)) for k, v in vectors["images"].items()}


def test_fixture_file_regenerates_identically(vectors):
    import scripts.gen_shared_fixtures as gen

    assert gen.build() == vectors


def test_descriptor_vectors(vectors, images):
    tol = vectors["tolerance"]
    for case in vectors["descriptors"]:
        d = descriptor(images[case["image"]], case["order"], case["scheme"])
        got = {(p, q): v for p, q, v in d.entries}
        for p, q, expected in case["entries"]:
            assert got[(p, q)] == pytest.approx(expected, abs=tol)


def test_distance_vectors(vectors, images):
    tol = vectors["tolerance"]
    for case in vectors["distances"]:
        value = msiq_distance(
            descriptor(images[case["gt"]], case["order"]),
            descriptor(images[case["test"]], case["order"]),
            case["variant"],
        )
        assert value == pytest.approx(case["value"], abs=tol)


def test_upscale_distance_is_small(vectors):
    matched = [
        c for c in vectors["distances"]
        if c["test"] == "blob32_up2" and c["variant"] == "rmse"
    ]
    assert matched and all(c["value"] <= 1e-4 for c in matched)


def test_degradation_vectors(vectors, images):
    tol = vectors["tolerance"]
    for case in vectors["degradations"]:
        out = degrade(
            images[case["image"]],
            DegradationSpec(DegradationKind.parse(case["kind"]), case["strength"]),
        )
        assert np.abs(out.data - np.array(case["output"])).max() <= tol


def test_error_vectors(vectors):
    for case in vectors["errors"]:
        if case["error"] == "DegenerateImageError":
            with pytest.raises(DegenerateImageError):
                descriptor(GrayImage(np.array(case["image"])))
        elif case["error"] == "ParameterError":
            with pytest.raises(ParameterError):
                DegradationKind.parse(case["kind"])
