"""
Synthetic compression tests with known answers.

Stress is built on a uniform strain grid, converted back to force and
displacement with the sample geometry, and noise is added to force the
way a load cell would add it.
"""

import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from ..ingest.conversion import BAR_PER_MPA
from ..ingest.metadata import write_sample_metadata
from ..ingest.parser import write_force_displacement
from ..models.base import FabricationMethod, RawCurve, SampleMetadata
from .models import CurveSpec, GroundTruth

logger = logging.getLogger("membranemech.synth")

TRUTH_SUFFIX = ".truth.json"


def stress_at(spec: CurveSpec, strain: np.ndarray) -> np.ndarray:
    """Noiseless loading stress (bar); zero before contact."""
    knots = [0.0, spec.yield_strain, spec.densification_onset_strain, spec.final_strain]
    values = [0.0, spec.yield_stress, spec.onset_stress, spec.final_stress]
    return np.interp(strain, knots, values, left=0.0)


def ground_truth(spec: CurveSpec) -> GroundTruth:
    spec.check()
    step = spec.final_strain / (spec.n_points - 1)
    breakpoints = [spec.yield_strain, spec.densification_onset_strain]
    creep_strain = None
    max_strain = spec.final_strain
    if spec.creep is not None:
        breakpoints.append(spec.final_strain)
        creep_strain = spec.creep.creep_strain
        max_strain += creep_strain
    return GroundTruth(
        elastic_modulus=spec.elastic_modulus,
        yield_strength=spec.yield_stress,
        pore_fraction=spec.densification_onset_strain,
        plateau_slope=spec.plateau_slope,
        densification_slope=spec.densification_slope,
        breakpoints=breakpoints,
        creep_strain=creep_strain,
        contact_strain=spec.pre_contact_points * step,
        max_strain=max_strain,
        seed=spec.seed,
    )


def generate_curve(
    spec: CurveSpec,
    sample_id: str = "synth",
    position_index: int = 0,
) -> Tuple[RawCurve, GroundTruth]:
    """
    Generate a raw force/displacement test and its ground truth.

    Output is a deterministic function of ``spec`` (``seed`` included).

    Raises:
        SpecError: ``spec`` violates its invariants.
    """
    truth = ground_truth(spec)
    rng = np.random.default_rng(spec.seed)

    step = spec.final_strain / (spec.n_points - 1)
    pad = -step * np.arange(spec.pre_contact_points, 0, -1)
    loading = np.linspace(0.0, spec.final_strain, spec.n_points)
    strain = np.concatenate((pad, loading))
    stress = stress_at(spec, strain)

    if spec.creep is not None:
        m = spec.creep.n_points
        frac = np.arange(1, m + 1) / m
        strain = np.concatenate((strain, spec.final_strain + spec.creep.creep_strain * frac))
        stress = np.concatenate((stress, np.full(m, spec.creep.hold_stress)))

    displacement = (strain + truth.contact_strain) * spec.thickness
    loading_end = spec.pre_contact_points + spec.n_points
    time = displacement / spec.displacement_rate
    if spec.creep is not None:
        time[loading_end:] = time[loading_end - 1] + spec.creep.duration * frac

    area = np.pi * (spec.pin_diameter / 2.0) ** 2
    newton_per_bar = area / BAR_PER_MPA
    force = stress * newton_per_bar
    if spec.noise_sigma > 0:
        force = force + rng.normal(0.0, spec.noise_sigma * newton_per_bar, size=force.size)

    logger.debug(
        "generated %s/%d: %d points, seed %d", sample_id, position_index, force.size, spec.seed
    )
    raw = RawCurve(
        sample_id=sample_id,
        position_index=position_index,
        time=time.tolist(),
        force=force.tolist(),
        displacement=displacement.tolist(),
    )
    return raw, truth


def write_synthetic_sample(
    spec: CurveSpec,
    directory: Union[str, Path],
    sample_id: str,
    position_index: int = 0,
    polymer_wt_pct: float = 15.0,
    humidity_pct: Optional[float] = None,
    nitrogen: bool = False,
    fabrication_method: Optional[FabricationMethod] = None,
) -> Path:
    """
    Write ``<sample_id>_p<position>.csv`` with its ``.meta`` and ``.truth.json``.

    Returns the CSV path.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    raw, truth = generate_curve(spec, sample_id, position_index)

    csv_path = directory / f"{sample_id}_p{position_index}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        write_force_displacement(raw, fh)
    write_sample_metadata(
        SampleMetadata(
            sample_id=sample_id,
            thickness_um=spec.thickness,
            pin_diameter_mm=spec.pin_diameter,
            polymer_wt_pct=polymer_wt_pct,
            humidity_pct=humidity_pct,
            nitrogen=nitrogen,
            position_index=position_index,
            fabrication_method=fabrication_method,
        ),
        csv_path.with_suffix(".meta"),
    )
    truth_path(csv_path).write_text(truth.model_dump_json(indent=2), encoding="utf-8")
    return csv_path


def truth_path(data_path: Union[str, Path]) -> Path:
    data_path = Path(data_path)
    return data_path.with_name(data_path.stem + TRUTH_SUFFIX)


def read_ground_truth(data_path: Union[str, Path]) -> GroundTruth:
    """Ground truth stored next to a synthetic CSV."""
    return GroundTruth.model_validate_json(truth_path(data_path).read_text(encoding="utf-8"))
