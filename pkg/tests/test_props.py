"""Tests for property extraction."""

import pytest

from membranemech.errors import (
    DegenerateIntersectionError,
    MissingRegionError,
    NonPhysicalError,
    SegmentationError,
)
from membranemech.props.extract import (
    compressibility,
    creep_strain,
    elastic_modulus,
    extract_properties,
    pore_fraction,
    yield_strength,
)
from membranemech.props.models import PropertyFlag
from membranemech.segment.models import RegionFit, RegionLabel, SegmentationResult, SegmentFlag
from membranemech.segment.segmenter import segment_curve


def _fit(label, lo, hi, slope, intercept=0.0, r2=1.0):
    return RegionFit(
        label=label,
        strain_range=(lo, hi),
        slope=slope,
        intercept=intercept,
        r_squared=r2,
        point_count=100,
    )


def _seg(elastic_slope=166.1, dens_intercept=-170.0, dens_slope=350.0, creep=None, flags=()):
    """Elastic to 0.15, plateau 10 + 50*strain, densification from 0.6."""
    regions = [
        _fit(RegionLabel.ELASTIC, 0.0, 0.15, elastic_slope),
        _fit(RegionLabel.PLATEAU, 0.15, 0.6, 50.0, 10.0),
        _fit(RegionLabel.DENSIFICATION, 0.6, 0.9, dens_slope, dens_intercept),
    ]
    breakpoints = [0.15, 0.6]
    if creep is not None:
        regions.append(_fit(RegionLabel.CREEP, 0.9, 0.9 + creep, 1e-4, 0.9))
        breakpoints.append(0.9)
    return SegmentationResult(
        sample_id="M1",
        position_index=1,
        breakpoints=breakpoints,
        regions=regions,
        has_creep=creep is not None,
        flags=tuple(flags),
    )


class TestProperties:
    def test_elastic_modulus_is_elastic_slope(self):
        assert elastic_modulus(_seg()) == 166.1
        assert elastic_modulus(_seg(elastic_slope=286.0)) == 286.0

    def test_yield_on_elastic_line(self):
        assert yield_strength(_seg(elastic_slope=200.0)) == pytest.approx(30.0)

    def test_pore_fraction_is_intersection(self):
        assert pore_fraction(_seg()) == pytest.approx(0.6)

    def test_parallel_fits(self):
        with pytest.raises(DegenerateIntersectionError, match="degenerate intersection"):
            pore_fraction(_seg(dens_slope=50.0))

    def test_non_positive_modulus(self):
        with pytest.raises(NonPhysicalError):
            extract_properties(_seg(elastic_slope=0.0))

    def test_missing_region(self):
        seg = _seg()
        seg = seg.model_copy(update={"regions": seg.regions[:1]})
        with pytest.raises(MissingRegionError):
            yield_strength(seg)
        with pytest.raises(MissingRegionError):
            pore_fraction(seg)

    def test_creep_strain(self):
        assert creep_strain(_seg(creep=0.03)) == pytest.approx(0.03)
        assert creep_strain(_seg()) is None


class TestExtractProperties:
    def test_full_record(self):
        props = extract_properties(_seg(creep=0.03))
        assert props.sample_id == "M1"
        assert props.position_index == 1
        assert props.elastic_modulus == 166.1
        assert props.yield_strength == pytest.approx(166.1 * 0.15)
        assert props.pore_fraction == pytest.approx(0.6)
        assert props.creep_strain == pytest.approx(0.03)
        assert props.compressibility is None
        assert props.flags == ()

    def test_pore_fraction_above_one_kept_and_flagged(self):
        props = extract_properties(_seg(dens_intercept=-314.0))
        assert props.pore_fraction == pytest.approx(1.08)
        assert props.has_flag(PropertyFlag.PORE_FRACTION_GT_1)

    def test_zero_creep_flagged(self):
        props = extract_properties(_seg(creep=0.0))
        assert props.creep_strain == 0.0
        assert props.has_flag(PropertyFlag.ZERO_CREEP)

    def test_segmentation_flags_carried(self):
        props = extract_properties(_seg(flags=[SegmentFlag.LOW_R2, SegmentFlag.NO_PLATEAU]))
        assert props.flags == (PropertyFlag.LOW_R2, PropertyFlag.NO_PLATEAU)

    def test_failed_segmentation(self):
        seg = SegmentationResult.failed("M1", 0, "segmentation failure: curve is a straight line")
        with pytest.raises(SegmentationError, match="straight line"):
            extract_properties(seg)

    def test_compressibility_from_curve(self, make_curve):
        curve = make_curve([0.0, 0.2, 0.5, 0.45], [0.0, 10.0, 40.0, 38.0])
        assert compressibility(curve) == 0.5


class TestOnGeneratedCurves:
    def test_noiseless_reference(self, reference_spec, aligned_from_spec):
        curve = aligned_from_spec(reference_spec)
        props = extract_properties(segment_curve(curve), curve)
        assert props.elastic_modulus == pytest.approx(166.1, rel=1e-3)
        assert props.pore_fraction == pytest.approx(0.57, abs=1e-3)
        assert props.yield_strength == pytest.approx(25.0, rel=1e-2)
        assert props.creep_strain is None
        assert props.compressibility == pytest.approx(reference_spec.final_strain, rel=1e-9)
        assert props.flags == ()

    def test_stress_scaling(self, reference_spec, aligned_from_spec, make_curve):
        curve = aligned_from_spec(reference_spec)
        strain, stress, time = curve.arrays()
        doubled = make_curve(strain, 2.0 * stress, time)
        base = extract_properties(segment_curve(curve))
        scaled = extract_properties(segment_curve(doubled))
        assert scaled.elastic_modulus == pytest.approx(2.0 * base.elastic_modulus, rel=1e-9)
        assert scaled.pore_fraction == pytest.approx(base.pore_fraction, rel=1e-9)


class TestFlagMonotonicity:
    @pytest.mark.parametrize("seed", range(6))
    def test_noise_keeps_zero_noise_flags(self, reference_spec, aligned_from_spec, seed):
        slipping = reference_spec.model_copy(update={"densification_onset_strain": 1.15}).check()
        clean = extract_properties(segment_curve(aligned_from_spec(slipping)))
        assert clean.has_flag(PropertyFlag.PORE_FRACTION_GT_1)

        noisy_spec = slipping.model_copy(update={"noise_sigma": 1.5, "seed": seed})
        noisy = extract_properties(segment_curve(aligned_from_spec(noisy_spec)))
        assert set(clean.flags) <= set(noisy.flags)
