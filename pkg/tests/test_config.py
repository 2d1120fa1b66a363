"""Tests for config loader."""


import pytest
from pydantic import ValidationError

from membranemech.config.loader import (
    CONFIG_ENV_VAR,
    MembraneMechConfig,
    SegmentConfig,
    deep_merge,
    load_config,
    resolve_config,
)


class TestSectionDefaults:
    def test_segment(self):
        cfg = SegmentConfig()
        assert cfg.smooth.grid_points == 512
        assert cfg.min_r2 == 0.95

    def test_top_level(self):
        cfg = MembraneMechConfig()
        assert cfg.ingest.thickness_min_um == 20.0
        assert cfg.ingest.thickness_max_um == 500.0
        assert cfg.align.noise_floor_bar == 0.2
        assert cfg.quality.cv_grid_points == 200
        assert cfg.quality.min_pass_fraction == 0.75
        assert cfg.formulate.warning_ratio == 50.0
        assert cfg.psd.coating_nm == 1.8
        assert cfg.campaign.rh_threshold == 49.0
        assert cfg.campaign.output_format == "csv"

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            MembraneMechConfig.model_validate({"quality": {"min_r2": 1.5}})


class TestDeepMerge:
    def test_nested(self):
        base = {"a": {"x": 1, "y": 2}, "b": 3}
        assert deep_merge(base, {"a": {"y": 5}}) == {"a": {"x": 1, "y": 5}, "b": 3}
        assert base["a"]["y"] == 2

    def test_replaces_non_mapping(self):
        assert deep_merge({"a": {"x": 1}}, {"a": 7}) == {"a": 7}


class TestWithOverrides:
    def test_keeps_siblings(self):
        cfg = MembraneMechConfig().with_overrides({"segment": {"smooth": {"grid_points": 256}}})
        assert cfg.segment.smooth.grid_points == 256
        assert cfg.segment.smooth.bandwidth_fraction == 0.05
        assert cfg.segment.min_r2 == 0.95

    def test_empty_is_identity(self):
        cfg = MembraneMechConfig()
        assert cfg.with_overrides({}) is cfg


class TestLoadConfig:
    def test_load_basic(self, tmp_path):
        config_file = tmp_path / "config.yaml"
        config_file.write_text("""
align:
  contact_fraction: 0.01
segment:
  min_r2: 0.9
  smooth:
    grid_points: 1024
formulate:
  densities:
    psf17: 1.12
    polarclean: 1.04
campaign:
  jobs: 2
""")
        cfg = load_config(config_file)
        assert cfg.align.contact_fraction == 0.01
        assert cfg.segment.min_r2 == 0.9
        assert cfg.segment.smooth.grid_points == 1024
        assert cfg.formulate.densities == {"psf17": 1.12, "polarclean": 1.04}
        assert cfg.campaign.jobs == 2
        assert cfg.quality.min_r2 == 0.95

    def test_env_substitution(self, tmp_path, monkeypatch):
        monkeypatch.setenv("TEST_COATING", "2.5")
        monkeypatch.setenv("TEST_FORMAT", "json-lines")

        config_file = tmp_path / "config.yaml"
        config_file.write_text("""
psd:
  coating_nm: ${TEST_COATING}
campaign:
  output_format: ${TEST_FORMAT}
""")
        cfg = load_config(config_file)
        assert cfg.psd.coating_nm == 2.5
        assert cfg.campaign.output_format == "json-lines"

    def test_file_not_found(self):
        with pytest.raises(FileNotFoundError):
            load_config("/nonexistent/path.yaml")

    def test_empty_config(self, tmp_path):
        config_file = tmp_path / "empty.yaml"
        config_file.write_text("")
        assert load_config(config_file) == MembraneMechConfig()

    def test_not_a_mapping(self, tmp_path):
        config_file = tmp_path / "list.yaml"
        config_file.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="mapping"):
            load_config(config_file)


class TestResolveConfig:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        assert resolve_config() == MembraneMechConfig()

    def test_env_var(self, tmp_path, monkeypatch):
        config_file = tmp_path / "env.yaml"
        config_file.write_text("quality:\n  min_pass_fraction: 0.5\n")
        monkeypatch.setenv(CONFIG_ENV_VAR, str(config_file))
        assert resolve_config().quality.min_pass_fraction == 0.5

    def test_explicit_path_wins(self, tmp_path, monkeypatch):
        explicit = tmp_path / "explicit.yaml"
        explicit.write_text("psd:\n  bin_nm: 1.0\n")
        monkeypatch.setenv(CONFIG_ENV_VAR, "/nonexistent/env.yaml")
        assert resolve_config(explicit).psd.bin_nm == 1.0
