"""Tests for synthetic curves, masks and campaigns."""

import numpy as np
import pytest
import yaml

from membranemech.errors import SpecError
from membranemech.ingest.metadata import read_sample_metadata
from membranemech.psd.distribution import area_weighted_psd
from membranemech.synth.campaign import GROUP_CONDITIONS, campaign_spec, generate_campaign
from membranemech.synth.curves import (
    generate_curve,
    ground_truth,
    read_ground_truth,
    stress_at,
    write_synthetic_sample,
)
from membranemech.synth.masks import analytic_porosity, generate_disk_mask
from membranemech.synth.models import CreepSpec, CurveSpec, DiskSpec


class TestCurveSpec:
    def test_reference_is_valid(self, reference_spec):
        assert reference_spec.yield_stress == pytest.approx(25.0)
        assert reference_spec.onset_stress == pytest.approx(25.0 + 15.0 * (0.57 - 25.0 / 166.1))

    @pytest.mark.parametrize(
        ("update", "message"),
        [
            ({"plateau_slope": 200.0}, "elastic modulus"),
            ({"densification_slope": 10.0, "plateau_slope": 12.0}, "densification slope"),
            ({"densification_onset_strain": 0.1}, "yield_strain"),
            ({"max_stress": 20.0}, "end stress"),
        ],
    )
    def test_invariants(self, reference_spec, update, message):
        with pytest.raises(SpecError, match=message):
            reference_spec.model_copy(update=update).check()

    def test_creep_hold_must_exceed_onset(self, reference_spec):
        spec = reference_spec.model_copy(
            update={"creep": CreepSpec(hold_stress=30.0, duration=10.0, creep_strain=0.01)}
        )
        with pytest.raises(SpecError):
            spec.check()


class TestGenerateCurve:
    def test_deterministic_for_seed(self, reference_spec):
        spec = reference_spec.model_copy(update={"noise_sigma": 1.5, "seed": 3})
        first, _ = generate_curve(spec)
        second, _ = generate_curve(spec)
        assert first == second

    def test_seed_changes_noise(self, reference_spec):
        a, _ = generate_curve(reference_spec.model_copy(update={"noise_sigma": 1.5, "seed": 1}))
        b, _ = generate_curve(reference_spec.model_copy(update={"noise_sigma": 1.5, "seed": 2}))
        assert a.force != b.force
        assert a.displacement == b.displacement

    def test_noiseless_stress_follows_knots(self, reference_spec):
        strain = np.array([0.0, reference_spec.yield_strain, 0.57, reference_spec.final_strain])
        np.testing.assert_allclose(
            stress_at(reference_spec, strain),
            [0.0, 25.0, reference_spec.onset_stress, 150.0],
        )

    def test_ground_truth(self, reference_spec):
        raw, truth = generate_curve(reference_spec)
        assert len(raw) == reference_spec.n_points
        assert truth.pore_fraction == 0.57
        assert truth.elastic_modulus == 166.1
        assert truth.breakpoints == [reference_spec.yield_strain, 0.57]
        assert truth.creep_strain is None
        assert truth.contact_strain == 0.0

    def test_creep_and_padding(self, reference_spec):
        spec = reference_spec.model_copy(
            update={
                "creep": CreepSpec(hold_stress=120.0, duration=60.0, creep_strain=0.03),
                "pre_contact_points": 20,
            }
        ).check()
        raw, truth = generate_curve(spec)
        assert len(raw) == 20 + spec.n_points + spec.creep.n_points
        assert len(truth.breakpoints) == 3
        assert truth.creep_strain == 0.03
        assert truth.contact_strain > 0.0
        assert truth.max_strain == pytest.approx(spec.final_strain + 0.03)
        assert raw.time[-1] - raw.time[20 + spec.n_points - 1] == pytest.approx(60.0)

    def test_invalid_spec_rejected(self, reference_spec):
        with pytest.raises(SpecError):
            ground_truth(reference_spec.model_copy(update={"plateau_slope": 500.0}))


class TestWriteSyntheticSample:
    def test_files(self, tmp_path, reference_spec):
        path = write_synthetic_sample(
            reference_spec, tmp_path, "M15", position_index=2, humidity_pct=42.0
        )
        assert path.name == "M15_p2.csv"
        meta = read_sample_metadata(path.with_suffix(".meta"))
        assert meta.sample_id == "M15"
        assert meta.position_index == 2
        assert meta.humidity_pct == 42.0
        assert read_ground_truth(path) == ground_truth(reference_spec)


class TestDiskMasks:
    @pytest.mark.parametrize("scale", [0.25, 1.0])
    def test_porosity_close_to_analytic(self, scale):
        disks = [DiskSpec(diameter=20.0, center=(50.0, 50.0))]
        mask = generate_disk_mask(disks, (100.0, 100.0), scale)
        porosity = area_weighted_psd(mask).surface_porosity
        assert porosity == pytest.approx(analytic_porosity(disks, (100.0, 100.0)), rel=0.02)

    def test_refining_scale_halves_discretization_error(self):
        d, image = 20.0, (100.0, 100.0)
        exact = np.pi * (d / 2.0) ** 2
        centers = np.random.default_rng(11).uniform(40.0, 60.0, size=(32, 2))

        def errors(scale):
            return np.array(
                [
                    abs(
                        generate_disk_mask([DiskSpec(diameter=d, center=(x, y))], image, scale)
                        .pore_pixels
                        * scale**2
                        - exact
                    )
                    for x, y in centers
                ]
            )

        coarse, fine = errors(1.0), errors(0.5)
        for scale, err in ((1.0, coarse), (0.5, fine)):
            # misclassified area lies within half a pixel diagonal of the circle
            delta = scale / np.sqrt(2.0)
            assert err.max() <= np.pi * (d * delta + delta**2)
        assert fine.mean() <= 0.6 * coarse.mean()

    def test_single_disk_bin(self):
        disks = [DiskSpec(diameter=10.0, center=(50.0, 50.0))]
        psd = area_weighted_psd(generate_disk_mask(disks, (100.0, 100.0), 0.5))
        assert psd.surface_porosity == pytest.approx(np.pi * 25.0 / 1e4 * 100.0, rel=0.02)
        assert psd.n_pores == 1
        assert int(np.argmax(psd.area_fraction)) == 20

    def test_random_placement(self):
        disks = [DiskSpec(diameter=8.0) for _ in range(10)]
        mask = generate_disk_mask(disks, (200.0, 200.0), 0.5, seed=4)
        psd = area_weighted_psd(mask)
        assert psd.surface_porosity == pytest.approx(
            analytic_porosity(disks, (200.0, 200.0)), rel=0.03
        )
        again = generate_disk_mask(disks, (200.0, 200.0), 0.5, seed=4)
        assert np.array_equal(mask.bits, again.bits)

    def test_no_disks(self):
        mask = generate_disk_mask([], (50.0, 50.0), 0.5)
        assert mask.pore_pixels == 0
        assert mask.bits.shape == (100, 100)

    def test_overlap(self):
        disks = [
            DiskSpec(diameter=10.0, center=(20.0, 20.0)),
            DiskSpec(diameter=10.0, center=(25.0, 20.0)),
        ]
        with pytest.raises(SpecError, match="overlaps"):
            generate_disk_mask(disks, (50.0, 50.0), 0.5)

    def test_outside_image(self):
        with pytest.raises(SpecError):
            generate_disk_mask([DiskSpec(diameter=10.0, center=(2.0, 20.0))], (50.0, 50.0), 0.5)

    def test_no_room(self):
        with pytest.raises(SpecError, match="no room"):
            generate_disk_mask([DiskSpec(diameter=80.0)], (50.0, 50.0), 0.5)

    def test_scale_must_be_positive(self):
        with pytest.raises(SpecError):
            generate_disk_mask([], (50.0, 50.0), 0.0)


class TestCampaign:
    def test_trends_built_in(self):
        low = campaign_spec(10.0, "rh_ge_49")
        high = campaign_spec(17.0, "rh_ge_49")
        assert high.elastic_modulus > low.elastic_modulus
        assert high.densification_onset_strain < low.densification_onset_strain

    def test_manifest_and_files(self, tmp_path):
        manifest_path = generate_campaign(
            tmp_path, concentrations=(10.0, 17.0), groups=("rh_ge_49", "nitrogen"),
            positions=2, n_points=400,
        )
        manifest = yaml.safe_load(manifest_path.read_text())
        assert [s["sample_id"] for s in manifest["samples"]] == [
            "c10-rh_ge_49",
            "c17-rh_ge_49",
            "c10-nitrogen",
            "c17-nitrogen",
        ]
        for sample in manifest["samples"]:
            assert len(sample["files"]) == 2
            for f in sample["files"]:
                assert (tmp_path / f).exists()
        meta = read_sample_metadata(tmp_path / "data" / "c17-nitrogen_p1.meta")
        assert meta.nitrogen is True
        assert meta.polymer_wt_pct == 17.0
        assert meta.humidity_pct == GROUP_CONDITIONS["nitrogen"]["humidity_pct"]

    def test_unknown_group(self, tmp_path):
        with pytest.raises(ValueError, match="unknown humidity group"):
            generate_campaign(tmp_path, groups=("dry",))

    def test_custom_spec_type(self):
        assert isinstance(campaign_spec(12.0, "nitrogen", n_points=100), CurveSpec)
