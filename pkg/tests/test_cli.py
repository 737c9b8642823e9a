import json

import numpy as np
import pytest

from msiq import GrayImage, load_image, save_image
from msiq.cli import main


@pytest.fixture()
def image_files(tmp_path, blob, ramp):
    a = tmp_path / "a.png"
    save_image(blob, a)
    from msiq import ResizeMethod, resize

    b = tmp_path / "a2x.png"
    save_image(resize(blob, 2.0, ResizeMethod.BICUBIC), b)
    return a, b


class TestCompute:
    def test_identical_pair(self, image_files, capsys):
        a, _ = image_files
        assert main(["compute", str(a), str(a)]) == 0
        out = capsys.readouterr().out
        assert "msiq_rmse 0" in out
        assert "psnr inf" in out

    def test_size_mismatch_path(self, image_files, capsys):
        a, b = image_files
        assert main(["compute", str(a), str(b)]) == 0
        out = capsys.readouterr().out
        assert "msiq_rmse" in out and "msiq_w" in out
        assert out.count("n/a (size mismatch; MSIQ is resizing-free)") == 2

    def test_io_error_exit_2(self, tmp_path, image_files):
        a, _ = image_files
        assert main(["compute", str(tmp_path / "missing.png"), str(a)]) == 2

    def test_decode_error_exit_2(self, tmp_path, image_files):
        a, _ = image_files
        bad = tmp_path / "bad.png"
        bad.write_bytes(b"garbage")
        assert main(["compute", str(bad), str(a)]) == 2

    def test_degenerate_exit_3(self, tmp_path, image_files):
        a, _ = image_files
        black = tmp_path / "black.png"
        save_image(GrayImage(np.zeros((16, 16))), black)
        assert main(["compute", str(black), str(a)]) == 3


class TestDegrade:
    def test_writes_output(self, image_files, tmp_path, capsys):
        a, _ = image_files
        out = tmp_path / "degraded.png"
        code = main(["degrade", str(a), str(out), "--kind", "rotation", "--strength", "0.2"])
        assert code == 0 and out.exists()
        degraded = load_image(out)
        assert degraded.shape == load_image(a).shape

    def test_zero_strength_close_to_input(self, image_files, tmp_path):
        a, _ = image_files
        out = tmp_path / "same.png"
        main(["degrade", str(a), str(out), "--kind", "rotation", "--strength", "0"])
        # one quantization step of slack on top of the resampling bound
        diff = np.abs(load_image(out).data - load_image(a).data).max()
        assert diff <= 1e-6 + 1.0 / 255.0

    def test_jpeg_strength_maps_to_quality(self, image_files, tmp_path):
        from msiq.transforms import jpeg_roundtrip

        a, _ = image_files
        out = tmp_path / "j.png"
        main(["degrade", str(a), str(out), "--kind", "jpeg", "--strength", "0.2"])
        expected = jpeg_roundtrip(load_image(a), 84)
        got = load_image(out)
        assert np.abs(got.data - expected.data).max() <= 0.5 / 255 + 1e-9

    def test_unknown_kind_exit_1(self, image_files, tmp_path, capsys):
        a, _ = image_files
        code = main(["degrade", str(a), str(tmp_path / "x.png"), "--kind", "melt", "--strength", "0.1"])
        assert code == 1
        err = capsys.readouterr().err
        assert "usage" in err or "valid" in err


class TestGeometricVsJpegViaCli:
    def test_rotation_dominates_jpeg_control(self, tmp_path, test_images, capsys):
        # same image, strongest setting: the geometric response must sit
        # at least an order of magnitude above the compression control
        src = tmp_path / "img.png"
        save_image(test_images["texture"], src)
        rotated = tmp_path / "rot.png"
        jpegged = tmp_path / "jpg.png"
        assert main(["degrade", str(src), str(rotated), "--kind", "rotation", "--strength", "0.2"]) == 0
        assert main(["degrade", str(src), str(jpegged), "--kind", "jpeg", "--strength", "0.2"]) == 0
        capsys.readouterr()

        def msiq_of(path):
            assert main(["compute", str(src), str(path)]) == 0
            out = capsys.readouterr().out
            line = next(l for l in out.splitlines() if l.startswith("msiq_rmse "))
            return float(line.split()[1])

        assert msiq_of(rotated) >= 10.0 * msiq_of(jpegged)


class TestUsageErrors:
    def test_no_command(self, capsys):
        assert main([]) == 1

    def test_unknown_experiment_name(self, capsys):
        assert main(["experiment", "exp99"]) == 1


class TestExperimentCommand:
    def test_sanity_passes(self, capsys):
        assert main(["experiment", "sanity"]) == 0
        out = capsys.readouterr().out
        assert "effective config:" in out
        assert "rotation_radians_per_unit" in out
        assert "checks passed" in out
        assert "[FAIL]" not in out

    def test_exp2_writes_reports(self, tmp_path, small_images, capsys):
        img_dir = tmp_path / "imgs"
        img_dir.mkdir()
        for name in ("stripes", "blobs"):
            save_image(small_images[name], img_dir / f"{name}.png")
        prefix = tmp_path / "rep"
        code = main(
            [
                "experiment", "exp2",
                "--images", str(img_dir),
                "--lambdas", "0,0.2",
                "--jobs", "2",
                "--out", str(prefix),
            ]
        )
        assert code == 0
        csv_text = (tmp_path / "rep.csv").read_text()
        assert csv_text.startswith("image_id,sr_method,scale,degradation,lambda,metric,value")
        report = json.loads((tmp_path / "rep.json").read_text())
        assert report["experiment"] == "exp2"
        out = capsys.readouterr().out
        assert "R(0.2)" in out
        assert "signed rho" in out

    def test_exp1_summary_has_inf_column(self, tmp_path, small_images, capsys):
        img_dir = tmp_path / "imgs"
        img_dir.mkdir()
        save_image(small_images["blobs"], img_dir / "blobs.png")
        code = main(
            [
                "experiment", "exp1",
                "--images", str(img_dir),
                "--scales", "2.0",
                "--out", str(tmp_path / "e1"),
                "--format", "csv",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "infPSNR" in out
        assert "infinite PSNR cases:" in out

    def test_benchmark_requires_images(self, capsys):
        assert main(["experiment", "benchmark"]) == 1

    def test_variant_selection_filters_records(self, tmp_path, small_images):
        img_dir = tmp_path / "imgs"
        img_dir.mkdir()
        save_image(small_images["blobs"], img_dir / "b.png")
        code = main(
            [
                "experiment", "exp2",
                "--images", str(img_dir),
                "--variant", "weighted",
                "--lambdas", "0,0.2",
                "--out", str(tmp_path / "vw"),
                "--format", "json",
            ]
        )
        assert code == 0
        report = json.loads((tmp_path / "vw.json").read_text())
        metrics = {r["metric"] for r in report["records"]}
        assert metrics == {"psnr", "ssim", "msiq_w"}

    def test_json_only_format(self, tmp_path, small_images):
        img_dir = tmp_path / "imgs"
        img_dir.mkdir()
        save_image(small_images["blobs"], img_dir / "b.png")
        code = main(
            [
                "experiment", "exp2",
                "--images", str(img_dir),
                "--lambdas", "0,0.2",
                "--out", str(tmp_path / "jq"),
                "--format", "json",
            ]
        )
        assert code == 0
        assert (tmp_path / "jq.json").exists()
        assert not (tmp_path / "jq.csv").exists()
