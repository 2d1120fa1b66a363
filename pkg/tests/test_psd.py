"""Tests for pore labelling, coating correction and pore-size distributions."""

import numpy as np
import pytest

from membranemech.config.loader import PsdConfig
from membranemech.errors import BinMismatchError, InsufficientReplicatesError, SchemaError
from membranemech.psd.batch import analyze_masks, mask_paths
from membranemech.psd.distribution import (
    aggregate_replicates,
    area_weighted_psd,
    bin_index,
    corrected_diameter,
    dilate_mask,
    equivalent_diameter,
)
from membranemech.psd.io import read_mask, write_mask
from membranemech.psd.labeling import label_pores
from membranemech.psd.models import PoreMask, PoreSizeDistribution
from membranemech.synth.masks import generate_disk_mask
from membranemech.synth.models import DiskSpec


def _mask(shape=(20, 20), pixels=(), scale=1.0, **kwargs) -> PoreMask:
    bits = np.zeros(shape, dtype=bool)
    for y, x in pixels:
        bits[y, x] = True
    return PoreMask(bits=bits, scale=scale, **kwargs)


def _disks(*specs, size=100.0, scale=0.5, **kwargs) -> PoreMask:
    disks = [DiskSpec(diameter=d, center=c) for d, c in specs]
    return generate_disk_mask(disks, (size, size), scale, **kwargs)


def _write(mask: PoreMask, path, group="", replicate_id=""):
    write_mask(mask, path)
    path.with_suffix(".meta").write_text(
        f"scale_nm_per_px: {mask.scale}\ngroup: {group}\nreplicate_id: {replicate_id}\n"
    )
    return path


class TestPoreMask:
    def test_needs_background(self):
        with pytest.raises(ValueError, match="background"):
            PoreMask(bits=np.ones((4, 4), dtype=bool), scale=1.0)

    def test_needs_two_dimensions(self):
        with pytest.raises(ValueError, match="2-D"):
            PoreMask(bits=np.zeros(4, dtype=bool), scale=1.0)

    def test_image_area(self):
        assert _mask((10, 20), scale=0.5).image_area_nm2 == 50.0


class TestLabelPores:
    def test_blank(self):
        assert label_pores(_mask()) == []

    def test_separate_squares(self):
        pixels = [(y, x) for y in range(2, 5) for x in range(2, 5)]
        pixels += [(y, x) for y in range(10, 13) for x in range(10, 13)]
        pores = label_pores(_mask(pixels=pixels))
        assert [p.pixel_area for p in pores] == [9, 9]
        assert not any(p.touches_border for p in pores)

    def test_diagonal_neighbours_connect(self):
        pores = label_pores(_mask(pixels=[(5, 5), (6, 6)]))
        assert len(pores) == 1
        assert pores[0].pixel_area == 2

    def test_border_flag(self):
        pores = label_pores(_mask(pixels=[(0, 7), (10, 10)]))
        assert [p.touches_border for p in pores] == [True, False]

    def test_areas_cover_every_pore_pixel(self):
        rng = np.random.default_rng(5)
        mask = PoreMask(bits=rng.random((64, 64)) < 0.3, scale=1.0)
        assert sum(p.pixel_area for p in label_pores(mask)) == mask.pore_pixels

    def test_translation_keeps_areas(self):
        pixels = [(4, 4), (4, 5), (5, 5), (9, 3), (12, 12), (12, 13), (13, 12)]
        mask = _mask(pixels=pixels)
        shifted = PoreMask(bits=np.roll(mask.bits, (2, 3), axis=(0, 1)), scale=1.0)
        areas = sorted(p.pixel_area for p in label_pores(mask))
        assert sorted(p.pixel_area for p in label_pores(shifted)) == areas


class TestDiameters:
    def test_equivalent_diameter(self):
        assert equivalent_diameter(np.pi * 25.0) == pytest.approx(10.0)

    def test_area_must_be_positive(self):
        with pytest.raises(ValueError):
            equivalent_diameter(0.0)

    def test_corrected_diameter(self):
        assert corrected_diameter(10.0, 1.8) == pytest.approx(13.6)


class TestDilateMask:
    def test_single_pixel_by_two_pixels(self):
        mask = _mask((11, 11), pixels=[(5, 5)], scale=0.5)
        grown = dilate_mask(mask, 1.0)
        assert grown.pore_pixels == 13
        assert grown.corrected

    def test_zero_thickness_keeps_bits(self):
        mask = _mask(pixels=[(3, 3), (3, 4)])
        grown = dilate_mask(mask, 0.0)
        assert np.array_equal(grown.bits, mask.bits)
        assert grown.corrected

    def test_negative_thickness(self):
        with pytest.raises(ValueError):
            dilate_mask(_mask(pixels=[(3, 3)]), -1.0)

    def test_monotone_in_thickness(self):
        mask = _mask((40, 40), pixels=[(10, 10), (25, 30)])
        thin = dilate_mask(mask, 2.0).bits
        thick = dilate_mask(mask, 3.5).bits
        assert np.all(thick[thin])
        assert thick.sum() > thin.sum()

    def test_disk_diameter_grows_by_twice_the_coating(self):
        mask = _disks((20.0, (30.0, 30.0)), size=60.0)
        before = label_pores(mask)[0].pixel_area * mask.scale**2
        grown = dilate_mask(mask, 1.8)
        after = label_pores(grown)[0].pixel_area * grown.scale**2
        growth = equivalent_diameter(after) - equivalent_diameter(before)
        assert growth == pytest.approx(3.6, abs=1.0)

    def test_dilation_may_fill_the_image(self):
        grown = dilate_mask(_mask((4, 4), pixels=[(1, 1)]), 10.0)
        assert grown.bits.all()
        assert grown.pore_pixels == 16
        psd = area_weighted_psd(grown)
        assert psd.surface_porosity == 100.0
        assert psd.n_pores == 1
        assert psd.border_pores == 1

    def test_input_mask_is_unchanged(self):
        mask = _mask((4, 4), pixels=[(1, 1)])
        dilate_mask(mask, 10.0)
        assert mask.pore_pixels == 1
        assert not mask.corrected


class TestAreaWeightedPSD:
    def test_single_disk_lands_in_its_bin(self):
        mask = _disks((10.25, (50.0, 50.0)))
        psd = area_weighted_psd(mask)
        assert np.flatnonzero(psd.area_fraction).tolist() == [20]
        assert psd.bin_edges[20] == 10.0
        assert psd.n_pores == 1
        analytic = np.pi * 10.25**2 / 4.0 / 100.0
        assert psd.surface_porosity == pytest.approx(analytic, rel=0.02)

    def test_histogram_sums_to_porosity(self):
        mask = _disks((6.25, (15.0, 15.0)), (10.25, (50.0, 50.0)), (14.75, (80.0, 80.0)))
        psd = area_weighted_psd(mask)
        assert np.flatnonzero(psd.area_fraction).tolist() == [12, 20, 29]
        assert psd.equivalent_porosity == pytest.approx(psd.surface_porosity, abs=1e-9)

    def test_bin_edges(self):
        psd = area_weighted_psd(_mask(), bin_nm=0.5, max_diameter=5.0)
        assert psd.bin_edges == [0.5 * k for k in range(11)]

    def test_diameter_on_an_edge_opens_the_next_bin(self):
        index = bin_index(np.array([0.3, 0.7, 1.5, 0.35, 0.0999]), 0.1)
        assert index.tolist() == [3, 7, 15, 3, 0]

    def test_bin_index_of_no_pores(self):
        assert bin_index(np.array([]), 0.5).size == 0

    def test_blank_mask(self):
        psd = area_weighted_psd(_mask())
        assert psd.surface_porosity == 0.0
        assert psd.n_pores == 0
        assert not any(psd.area_fraction)

    def test_exclude_border(self):
        mask = _disks((10.0, (5.0, 50.0)), (10.0, (50.0, 50.0)))
        kept = area_weighted_psd(mask)
        inner = area_weighted_psd(mask, exclude_border=True)
        assert kept.border_pores == inner.border_pores == 1
        assert inner.n_pores == 1
        assert inner.surface_porosity == pytest.approx(kept.surface_porosity / 2.0, rel=0.05)

    def test_corrected_porosity_exceeds_coated(self):
        mask = _disks((8.0, (20.0, 20.0)), (12.0, (60.0, 60.0)))
        coated = area_weighted_psd(mask, max_diameter=120.0)
        corrected = area_weighted_psd(dilate_mask(mask, 1.8), max_diameter=120.0)
        assert corrected.corrected and not coated.corrected
        assert corrected.surface_porosity > coated.surface_porosity
        assert len(corrected.bin_edges) == len(coated.bin_edges)


class TestAggregateReplicates:
    @staticmethod
    def _psd(porosity, edges=(0.0, 0.5)):
        return PoreSizeDistribution(
            bin_edges=list(edges),
            area_fraction=[porosity / 100.0] * (len(edges) - 1),
            surface_porosity=porosity,
        )

    def test_mean_and_standard_error(self):
        agg = aggregate_replicates([self._psd(10.0), self._psd(11.0), self._psd(12.0)])
        assert agg.n_replicates == 3
        assert agg.porosity_mean == pytest.approx(11.0)
        assert agg.porosity_se == pytest.approx(1.0 / np.sqrt(3.0))
        assert agg.mean == pytest.approx([0.11])
        assert agg.se == pytest.approx([0.01 / np.sqrt(3.0)])

    def test_single_replicate(self):
        with pytest.raises(InsufficientReplicatesError):
            aggregate_replicates([self._psd(10.0)])

    def test_bin_mismatch(self):
        with pytest.raises(BinMismatchError):
            aggregate_replicates([self._psd(10.0), self._psd(11.0, edges=(0.0, 0.5, 1.0))])


class TestMaskIO:
    def test_png_with_sidecar(self, tmp_path):
        mask = _disks((10.0, (30.0, 30.0)), size=60.0)
        path = _write(mask, tmp_path / "r1.png", group="psf10", replicate_id="r1")
        back = read_mask(path)
        assert np.array_equal(back.bits, mask.bits)
        assert back.scale == 0.5
        assert back.group == "psf10"
        assert back.replicate_id == "r1"

    def test_pgm(self, tmp_path):
        mask = _mask(pixels=[(3, 3), (8, 9)])
        path = _write(mask, tmp_path / "m.pgm")
        back = read_mask(path)
        assert np.array_equal(back.bits, mask.bits)
        assert back.replicate_id == "m"

    def test_missing_sidecar(self, tmp_path):
        path = write_mask(_mask(pixels=[(3, 3)]), tmp_path / "m.png")
        with pytest.raises(FileNotFoundError):
            read_mask(path)
        assert read_mask(path, scale=2.0).scale == 2.0

    def test_sidecar_without_scale(self, tmp_path):
        path = write_mask(_mask(pixels=[(3, 3)]), tmp_path / "m.png")
        path.with_suffix(".meta").write_text("group: a\n")
        with pytest.raises(SchemaError):
            read_mask(path)


class TestAnalyzeMasks:
    def test_groups_and_errors(self, tmp_path):
        for i, seed in enumerate((1, 2)):
            mask = generate_disk_mask(
                [DiskSpec(diameter=d) for d in (6.0, 9.0, 12.0)], (80.0, 80.0), 0.5, seed=seed
            )
            _write(mask, tmp_path / f"a{i}.png", group="a", replicate_id=f"r{i}")
        _write(_disks((10.0, (40.0, 40.0)), size=80.0), tmp_path / "b0.png", group="b")
        (tmp_path / "broken.png").write_bytes(b"not an image")
        (tmp_path / "notes.txt").write_text("ignored")

        paths = mask_paths(tmp_path)
        assert [p.name for p in paths] == ["a0.png", "a1.png", "b0.png", "broken.png"]

        result = analyze_masks(paths, PsdConfig())
        assert [(a.group, a.corrected) for a in result.aggregates] == [("a", False), ("a", True)]
        assert len(result.distributions) == 6
        stages = sorted((e["stage"], e["sample_id"] or e["file"]) for e in result.errors)
        assert stages == [("aggregate", "b"), ("read", "broken.png")]

        rows = result.rows()
        porosity = [r for r in rows if r["row_type"] == "porosity"]
        assert len(porosity) == 2
        coated, corrected = result.aggregates
        assert porosity[0]["mean_area_fraction"] == pytest.approx(coated.porosity_mean / 100.0)
        assert corrected.porosity_mean > coated.porosity_mean
        assert coated.bin_edges == corrected.bin_edges
