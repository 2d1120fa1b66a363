"""Shared fixtures for membranemech tests."""

from typing import Callable, Optional, Sequence

import numpy as np
import pytest

from membranemech.ingest.conversion import align_contact, to_stress_strain
from membranemech.models.base import SampleGeometry, StressStrainCurve
from membranemech.synth.curves import generate_curve, write_synthetic_sample
from membranemech.synth.models import CurveSpec


@pytest.fixture()
def geometry() -> SampleGeometry:
    """100 um membrane, 5 mm pin, 15 wt%."""
    return SampleGeometry(thickness_um=100.0, pin_diameter_mm=5.0, polymer_wt_pct=15.0)


@pytest.fixture()
def make_curve(geometry) -> Callable[..., StressStrainCurve]:
    """Build an aligned ``StressStrainCurve`` straight from arrays."""

    def _make(
        strain: Sequence[float],
        stress: Sequence[float],
        time: Optional[Sequence[float]] = None,
        sample_id: str = "S1",
        position_index: int = 0,
        aligned: bool = True,
    ) -> StressStrainCurve:
        strain = np.asarray(strain, dtype=float)
        return StressStrainCurve(
            sample_id=sample_id,
            position_index=position_index,
            strain=strain.tolist(),
            stress=np.asarray(stress, dtype=float).tolist(),
            time=(np.asarray(time, dtype=float) if time is not None else strain * 100.0).tolist(),
            geometry=geometry,
            alignment_offset=(0.0, 0.0) if aligned else None,
        )

    return _make


@pytest.fixture()
def reference_spec() -> CurveSpec:
    """Trilinear curve with modulus 166.1 bar and pore fraction 0.57."""
    return CurveSpec(
        elastic_modulus=166.1,
        yield_strain=25.0 / 166.1,
        plateau_slope=15.0,
        densification_onset_strain=0.57,
        densification_slope=450.0,
    ).check()


@pytest.fixture()
def aligned_from_spec() -> Callable[..., StressStrainCurve]:
    """Generate, convert and align a synthetic curve."""

    def _build(spec: CurveSpec, sample_id: str = "synth", position_index: int = 0):
        raw, _ = generate_curve(spec, sample_id, position_index)
        geom = SampleGeometry(
            thickness_um=spec.thickness,
            pin_diameter_mm=spec.pin_diameter,
            polymer_wt_pct=15.0,
        )
        return align_contact(to_stress_strain(raw, geom))

    return _build


@pytest.fixture()
def sample_file(tmp_path, reference_spec):
    """One synthetic test file with sidecar and ground truth."""
    return write_synthetic_sample(
        reference_spec, tmp_path / "data", "M15", position_index=0, humidity_pct=55.0
    )
