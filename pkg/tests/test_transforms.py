import numpy as np
import pytest

from msiq import (
    DegradationKind,
    DegradationSpec,
    GrayImage,
    ParameterError,
    ResizeMethod,
    degrade,
    resize,
    resize_to,
)
from msiq.transforms import (
    anisotropic_affine_matrix,
    jpeg_quality,
    jpeg_roundtrip,
    perspective_matrix,
)

ALL_METHODS = list(ResizeMethod)
GEOM_KINDS = [k for k in DegradationKind if k is not DegradationKind.JPEG]


class TestResize:
    @pytest.mark.parametrize("method", ALL_METHODS)
    def test_scale_one_is_pixel_identical(self, blob, method):
        out = resize(blob, 1.0, method)
        assert np.array_equal(out.data, blob.data)

    def test_checkerboard_nearest_2x_block_duplication(self):
        board = GrayImage(np.array([[0.0, 1.0], [1.0, 0.0]]))
        out = resize(board, 2.0, ResizeMethod.NEAREST)
        expected = np.kron(board.data, np.ones((2, 2)))
        assert np.array_equal(out.data, expected)

    @pytest.mark.parametrize("method", ALL_METHODS)
    @pytest.mark.parametrize("scale", [0.5, 1.5, 2.0])
    def test_constant_image_stays_constant(self, method, scale):
        img = GrayImage(np.full((12, 16), 0.37))
        out = resize(img, scale, method)
        assert np.abs(out.data - 0.37).max() <= 1e-9

    def test_output_dimensions(self, blob):
        out = resize(blob, 0.75, ResizeMethod.BICUBIC)
        assert out.shape == (24, 24)

    def test_collapse_to_zero_rejected(self):
        img = GrayImage(np.ones((3, 3)))
        with pytest.raises(ParameterError):
            resize(img, 0.01, ResizeMethod.BILINEAR)

    def test_negative_scale_rejected(self, blob):
        with pytest.raises(ParameterError):
            resize(blob, -1.0, ResizeMethod.BILINEAR)

    @pytest.mark.parametrize("method", ALL_METHODS)
    def test_range_preserved(self, test_images, method):
        img = test_images["stripes"]
        for scale in (0.5, 0.75, 1.5, 2.0, 3.0):
            out = resize(img, scale, method)
            assert out.data.min() >= 0.0 and out.data.max() <= 1.0


class TestResizeTo:
    def test_same_dims_nearest_identity(self, blob):
        out = resize_to(blob, blob.height, blob.width, ResizeMethod.NEAREST)
        assert np.array_equal(out.data, blob.data)

    def test_exact_target_dims(self, blob):
        out = resize_to(blob, 17, 41, ResizeMethod.LANCZOS4)
        assert out.shape == (17, 41)

    def test_single_pixel_in_range(self, blob):
        out = resize_to(blob, 1, 1, ResizeMethod.AREA)
        assert out.shape == (1, 1)
        assert 0.0 <= out.data[0, 0] <= 1.0

    def test_down_then_back_finite_psnr(self, test_images):
        from msiq import psnr

        img = test_images["texture"]
        down = resize(img, 0.5, ResizeMethod.BICUBIC)
        back = resize_to(down, img.height, img.width, ResizeMethod.BICUBIC)
        value = psnr(img, back)
        assert np.isfinite(value) and value > 20.0

    def test_zero_target_rejected(self, blob):
        with pytest.raises(ParameterError):
            resize_to(blob, 0, 5, ResizeMethod.NEAREST)


class TestDegradationSpec:
    def test_strength_range(self):
        with pytest.raises(ParameterError):
            DegradationSpec(DegradationKind.SHEAR, 1.0)
        with pytest.raises(ParameterError):
            DegradationSpec(DegradationKind.SHEAR, -0.05)

    def test_kind_parsing(self):
        spec = DegradationSpec("rotation", 0.1)
        assert spec.kind is DegradationKind.ROTATION
        with pytest.raises(ParameterError):
            DegradationKind.parse("melt")


class TestDegrade:
    @pytest.mark.parametrize("kind", GEOM_KINDS)
    def test_zero_strength_geometric_identity(self, blob, kind):
        out = degrade(blob, DegradationSpec(kind, 0.0))
        assert np.abs(out.data - blob.data).max() <= 1e-6

    def test_zero_strength_jpeg_quality100(self, blob):
        out = degrade(blob, DegradationSpec(DegradationKind.JPEG, 0.0))
        ref = jpeg_roundtrip(blob, 100)
        assert np.array_equal(out.data, ref.data)

    def test_jpeg_strength_02_is_quality_84(self, blob):
        assert jpeg_quality(0.20) == 84
        assert jpeg_quality(0.0) == 100
        assert jpeg_quality(0.05) == 96
        out = degrade(blob, DegradationSpec(DegradationKind.JPEG, 0.20))
        ref = jpeg_roundtrip(blob, 84)
        assert np.array_equal(out.data, ref.data)

    def test_anisotropic_jacobian_is_one(self, blob):
        m = anisotropic_affine_matrix(blob, 0.20)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        assert det == pytest.approx(1.0, rel=1e-12)

    def test_perspective_moves_top_corners_inward(self, blob):
        p = perspective_matrix(blob, 0.2)
        w = blob.width
        # forward map of the top-left corner
        src = np.array([0.0, 0.0, 1.0])
        out = p @ src
        assert out[0] / out[2] == pytest.approx(0.2 * w / 2.0, rel=1e-6)

    @pytest.mark.parametrize("kind", list(DegradationKind))
    def test_output_shape_and_range(self, test_images, kind):
        img = test_images["blobs"]
        out = degrade(img, DegradationSpec(kind, 0.2))
        assert out.shape == img.shape
        assert out.data.min() >= 0.0 and out.data.max() <= 1.0

    @pytest.mark.parametrize("kind", list(DegradationKind))
    def test_deterministic(self, blob, kind):
        spec = DegradationSpec(kind, 0.15)
        a = degrade(blob, spec)
        b = degrade(blob, spec)
        assert np.array_equal(a.data, b.data)

    def test_monotone_descriptor_response(self, test_images):
        # at most one inversion tolerated per trajectory
        from msiq import descriptor, msiq_rmse

        for kind in GEOM_KINDS:
            for name, img in test_images.items():
                d0 = descriptor(img)
                values = [
                    msiq_rmse(d0, descriptor(degrade(img, DegradationSpec(kind, lam))))
                    for lam in (0.0, 0.05, 0.10, 0.15, 0.20)
                ]
                inversions = sum(1 for a, b in zip(values, values[1:]) if b < a)
                assert inversions <= 1, (kind, name, values)

    def test_jpeg_response_small_vs_geometric(self, test_images):
        # non-geometric control must sit far below the geometric response
        from msiq import descriptor, msiq_rmse

        geo, jpeg = [], []
        for name, img in test_images.items():
            d0 = descriptor(img)

            def delta(kind):
                v0 = msiq_rmse(d0, descriptor(degrade(img, DegradationSpec(kind, 0.0))))
                v1 = msiq_rmse(d0, descriptor(degrade(img, DegradationSpec(kind, 0.20))))
                return v1 - v0

            geo.extend(delta(k) for k in GEOM_KINDS)
            jpeg.append(delta(DegradationKind.JPEG))
        assert np.mean(jpeg) < np.mean(geo) / 10.0

    def test_rotation_mapping_knob(self, blob):
        spec = DegradationSpec(DegradationKind.ROTATION, 0.2)
        default = degrade(blob, spec)
        doubled = degrade(blob, spec, rotation_radians_per_unit=2.0)
        assert not np.array_equal(default.data, doubled.data)
