import numpy as np
import pytest

from msiq import GrayImage, RunConfig
from msiq.harness import (
    run_ablation,
    run_controlled_sr,
    run_exp1,
    run_exp2,
    standard_test_images,
)

FULL_CFG = RunConfig(jobs=4)


@pytest.fixture(scope="session")
def test_images():
    """Full-size bundled synthetic set (expensive runs share this)."""
    return standard_test_images()


@pytest.fixture(scope="session")
def small_images():
    """Reduced-size set for structural harness tests."""
    return standard_test_images(size=64)


@pytest.fixture(scope="session")
def exp1_report_full(test_images):
    return run_exp1(test_images, FULL_CFG)


@pytest.fixture(scope="session")
def exp2_report_full(test_images):
    return run_exp2(test_images, FULL_CFG)


@pytest.fixture(scope="session")
def controlled_report_full(test_images):
    return run_controlled_sr(test_images, FULL_CFG)


@pytest.fixture(scope="session")
def ablation_report_full(test_images):
    return run_ablation(test_images, FULL_CFG)


@pytest.fixture()
def ramp():
    data = (np.arange(64, dtype=np.float64).reshape(8, 8)) / 63.0 * 0.9 + 0.05
    return GrayImage(data)


@pytest.fixture()
def blob():
    ii, jj = np.mgrid[0:32, 0:32].astype(np.float64)
    r2 = (ii - 13.0) ** 2 + (jj - 19.0) ** 2
    return GrayImage(0.1 + 0.85 * np.exp(-r2 / 60.0))
