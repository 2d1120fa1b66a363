"""Tests for the command-line interface."""

import pytest

from membranemech.cli.main import main
from membranemech.outputs import read_table
from membranemech.psd.io import write_mask
from membranemech.synth.campaign import generate_campaign
from membranemech.synth.masks import generate_disk_mask
from membranemech.synth.models import DiskSpec


class TestCLI:
    def test_no_args(self, capsys):
        assert main([]) == 0
        assert "membranemech" in capsys.readouterr().out

    def test_unknown_format(self):
        with pytest.raises(SystemExit):
            main(["analyze", "x.csv", "--format", "xml"])


class TestAnalyze:
    def test_stdout(self, sample_file, capsys):
        assert main(["analyze", str(sample_file)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("sample_id\tposition\twt_pct")
        assert lines[1].startswith("M15\t0\t15.0")

    def test_out_dir(self, sample_file, tmp_path):
        out = tmp_path / "out"
        assert main(["analyze", str(sample_file), "--out", str(out)]) == 0
        assert len(read_table(out / "properties.csv")) == 1
        assert (out / "M15_p0.seg.txt").exists()
        assert (out / "M15_p0.svg").exists()

    def test_json_lines(self, sample_file, tmp_path):
        out = tmp_path / "out"
        assert main(["analyze", str(sample_file), "--out", str(out), "--format", "json-lines"]) == 0
        assert (out / "properties.jsonl").exists()

    def test_missing_file(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path / "nope.csv")]) == 1
        assert "File not found" in capsys.readouterr().err

    def test_bad_file(self, sample_file, capsys):
        sample_file.write_text("not,a,curve\n")
        assert main(["analyze", str(sample_file)]) == 1
        assert "Error: ingest" in capsys.readouterr().err

    def test_missing_config(self, sample_file, tmp_path, capsys):
        assert main(["analyze", str(sample_file), "--config", str(tmp_path / "c.yaml")]) == 1
        assert "Config file not found" in capsys.readouterr().err


class TestPlanDilution:
    def test_single_target(self, capsys):
        code = main(
            ["plan-dilution", "--stock", "psf17:17", "--stock", "solvent:0", "--target", "12"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].split("\t")[0] == "target_wt_pct"
        assert "7.0588" in out

    def test_partial(self, capsys):
        code = main(
            [
                "plan-dilution",
                "--stock", "psf17:17",
                "--stock", "solvent:0",
                "--target", "12",
                "--target", "20",
            ]
        )
        assert code == 2
        assert "target 20.0" in capsys.readouterr().err

    def test_all_infeasible(self):
        assert main(["plan-dilution", "--stock", "psf17:17", "--target", "20"]) == 1

    def test_bad_stock(self, capsys):
        assert main(["plan-dilution", "--stock", "psf17", "--target", "12"]) == 1
        assert "LABEL:WT" in capsys.readouterr().err


class TestSynth:
    def test_single_sample(self, tmp_path, capsys):
        assert main(["synth", "--out", str(tmp_path), "--positions", "2", "--seed", "5"]) == 0
        assert (tmp_path / "synth_p0.csv").exists()
        assert (tmp_path / "synth_p1.meta").exists()
        assert capsys.readouterr().out.count("Wrote") == 2

    def test_invalid_spec(self, tmp_path, capsys):
        assert main(["synth", "--out", str(tmp_path), "--pore-fraction", "0.1"]) == 1
        assert "Error:" in capsys.readouterr().err


class TestCv:
    def test_directory(self, tmp_path, capsys):
        main(["synth", "--out", str(tmp_path), "--positions", "3"])
        capsys.readouterr()
        assert main(["cv", str(tmp_path), "--jobs", "1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        fields = dict(zip(lines[0].split("\t"), lines[1].split("\t")))
        assert fields["sample_id"] == "synth"
        assert fields["n_curves"] == "3"
        assert fields["pass_fail"] == "pass"
        assert 0.0 <= float(fields["cv"]) < 0.05

    def test_missing_directory(self, tmp_path):
        assert main(["cv", str(tmp_path / "nope")]) == 1


class TestCampaignAndTrend:
    def test_end_to_end(self, tmp_path, capsys):
        manifest = generate_campaign(
            tmp_path / "demo",
            concentrations=(10.0, 15.0),
            groups=("rh_ge_49",),
            positions=1,
            n_points=800,
        )
        out = tmp_path / "results"
        assert main(["campaign", str(manifest), "--out", str(out), "--jobs", "1"]) == 0
        assert "Wrote 2 property rows for 2 samples" in capsys.readouterr().out

        assert main(["trend", str(out / "properties.csv")]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3
        assert lines[1].split("\t")[:2] == ["rh_ge_49", "elastic_modulus"]

    def test_missing_manifest(self, tmp_path, capsys):
        assert main(["campaign", str(tmp_path / "manifest.yaml")]) == 1
        assert "Manifest not found" in capsys.readouterr().err

    def test_trend_missing_table(self, tmp_path):
        assert main(["trend", str(tmp_path / "properties.csv")]) == 1


class TestPsd:
    def test_directory(self, tmp_path, capsys):
        for i in range(2):
            mask = generate_disk_mask(
                [DiskSpec(diameter=8.0), DiskSpec(diameter=12.0)], (60.0, 60.0), 0.5, seed=i
            )
            path = write_mask(mask, tmp_path / f"m{i}.png")
            path.with_suffix(".meta").write_text(
                f"scale_nm_per_px: 0.5\ngroup: g1\nreplicate_id: r{i}\n"
            )
        out = tmp_path / "out"
        assert main(["psd", str(tmp_path), "--out", str(out)]) == 0
        assert (out / "psd.csv").exists()
        assert (out / "psd.svg").exists()

    def test_empty_directory(self, tmp_path, capsys):
        assert main(["psd", str(tmp_path)]) == 1
        assert "No masks found" in capsys.readouterr().err
