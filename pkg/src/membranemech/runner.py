"""
Campaign runner: orchestrates per-curve analysis and per-sample reporting.

Reads a manifest, pushes every data file through ingest, alignment,
segmentation and property extraction (in a worker pool), then aggregates
consistency, quality and trends per sample and writes the report tables
and plots from a single process.

Manifest format::

    root: .                # relative to the manifest file
    output_dir: results    # relative to root
    config:                # deep-merged over the active config
      segment:
        min_r2: 0.9
    samples:
      - sample_id: c10-rh_ge_49
        files: [data/c10-rh_ge_49_p0.csv, data/c10-rh_ge_49_p1.csv]
        metadata:          # optional; overrides the .meta sidecars
          polymer_wt_pct: 10
"""

import logging
import os
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

import pandas as pd
import yaml
from pydantic import BaseModel, Field, ValidationError

from .config.loader import MembraneMechConfig, resolve_config
from .errors import ManifestError, MembraneMechError, SegmentationError
from .ingest.conversion import align_contact, to_stress_strain
from .ingest.metadata import read_sample_metadata, sidecar_path
from .ingest.parser import read_force_displacement
from .models.base import SampleMetadata, StressStrainCurve
from .outputs import open_table_sink, schemas
from .plots import plot_report
from .props.extract import extract_properties
from .props.models import MechanicalProperties
from .quality.assessment import assess_quality
from .quality.consistency import intra_sample_cv
from .quality.models import ConsistencyReport, QualityReport
from .quality.summary import summarize_cv
from .segment.models import SegmentationResult
from .segment.records import write_segmentation_record
from .segment.segmenter import segment_curve
from .trends import TrendFit, assign_group, fit_trends

logger = logging.getLogger("membranemech.runner")


class SampleEntry(BaseModel):
    """One membrane: its test files and optional metadata overrides."""

    sample_id: str
    files: List[str] = Field(..., min_length=1)
    metadata: Dict[str, Any] = Field(default_factory=dict)


class CampaignManifest(BaseModel):
    """Samples to process, where to write results, and config overrides."""

    root: Path = Path(".")
    output_dir: Path = Path("results")
    samples: List[SampleEntry] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path) -> "CampaignManifest":
        """
        Read a YAML manifest; ``root`` resolves against the manifest's folder.

        Raises:
            ManifestError: Missing, unreadable or invalid manifest.
        """
        path = Path(path)
        if not path.exists():
            raise ManifestError(f"Manifest not found: {path}")
        try:
            raw = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise ManifestError(f"{path}: unreadable manifest ({exc})") from exc
        if not isinstance(raw, dict):
            raise ManifestError(f"{path}: manifest must be a mapping")
        try:
            manifest = cls.model_validate(raw)
        except ValidationError as exc:
            raise ManifestError(f"{path}: invalid manifest ({exc.error_count()} errors)") from exc
        return manifest.model_copy(update={"root": (path.parent / manifest.root).resolve()})

    @classmethod
    def from_directory(cls, directory: str | Path) -> "CampaignManifest":
        """
        Manifest for every ``*.csv`` with a sidecar in ``directory``,
        grouped by the sidecar's sample_id.
        """
        directory = Path(directory).resolve()
        groups: "OrderedDict[str, List[str]]" = OrderedDict()
        for csv_path in sorted(directory.glob("*.csv")):
            meta = sidecar_path(csv_path)
            sample_id = csv_path.stem
            if meta.exists():
                try:
                    sample_id = read_sample_metadata(meta).sample_id
                except (MembraneMechError, ValueError, yaml.YAMLError) as exc:
                    logger.warning(
                        "%s: unreadable sidecar, using %r: %s", meta.name, sample_id, exc
                    )
            groups.setdefault(sample_id, []).append(csv_path.name)
        return cls(
            root=directory,
            samples=[SampleEntry(sample_id=s, files=f) for s, f in groups.items()],
        )

    @property
    def output_path(self) -> Path:
        return self.root / self.output_dir

    def resolve(self, file: str) -> Path:
        return self.root / file

    def validate_inputs(self) -> None:
        """
        Raises:
            ManifestError: No samples, or referenced files are missing.
        """
        if not self.samples:
            raise ManifestError("manifest has an empty sample set")
        missing = [f for s in self.samples for f in s.files if not self.resolve(f).exists()]
        if missing:
            raise ManifestError(f"missing input files: {', '.join(missing)}")


class ErrorRecord(BaseModel):
    """A file that could not be analyzed."""

    sample_id: str
    file: str
    stage: str
    error_type: str
    message: str


class CurveTask(BaseModel):
    sample_id: str
    path: str
    metadata: Dict[str, Any] = Field(default_factory=dict)
    config: MembraneMechConfig = Field(default_factory=MembraneMechConfig)


class CurveOutcome(BaseModel):
    """Everything known about one test file after analysis."""

    sample_id: str
    file: str
    metadata: Optional[SampleMetadata] = None
    humidity_group: Optional[str] = None
    curve: Optional[StressStrainCurve] = None
    segmentation: Optional[SegmentationResult] = None
    properties: Optional[MechanicalProperties] = None
    error: Optional[ErrorRecord] = None

    @property
    def position_index(self) -> int:
        return self.metadata.position_index if self.metadata else 0


def load_metadata(
    path: Path, sample_id: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None
) -> SampleMetadata:
    """Sidecar metadata of a data file with manifest overrides applied."""
    meta = read_sample_metadata(sidecar_path(path))
    data = {**meta.model_dump(), **(overrides or {})}
    if sample_id:
        data["sample_id"] = sample_id
    return SampleMetadata.model_validate(data)


def analyze_file(
    path: str | Path,
    sample_id: Optional[str] = None,
    cfg: Optional[MembraneMechConfig] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> CurveOutcome:
    """
    Run one data file through the whole pipeline.

    Hard failures (unreadable file, bad metadata, no contact) become an
    ``ErrorRecord``; a segmentation failure is kept as a failed
    segmentation for the quality stage.
    """
    cfg = cfg or MembraneMechConfig()
    path = Path(path)
    sid = sample_id or path.stem
    outcome = CurveOutcome(sample_id=sid, file=str(path))
    stage = "metadata"
    try:
        meta = load_metadata(path, sample_id, metadata)
        sid = outcome.sample_id = meta.sample_id
        outcome.metadata = meta
        stage = "group"
        group = assign_group(meta.humidity_pct, meta.nitrogen, cfg.campaign.rh_threshold)
        outcome.humidity_group = group.value
        stage = "ingest"
        raw = read_force_displacement(path, sid, position_index=meta.position_index)
        curve = to_stress_strain(raw, meta.to_geometry(), cfg.ingest)
        stage = "align"
        outcome.curve = align_contact(curve, cfg.align)
    except (MembraneMechError, ValueError, OSError) as exc:
        logger.warning("%s: %s failed: %s", path.name, stage, exc)
        outcome.error = ErrorRecord(
            sample_id=sid,
            file=path.name,
            stage=stage,
            error_type=type(exc).__name__,
            message=str(exc),
        )
        return outcome

    try:
        outcome.segmentation = segment_curve(outcome.curve, cfg.segment)
    except (SegmentationError, ValueError) as exc:
        logger.warning("%s: %s", path.name, exc)
        outcome.segmentation = SegmentationResult.failed(sid, meta.position_index, str(exc))
        return outcome

    try:
        outcome.properties = extract_properties(outcome.segmentation, outcome.curve)
    except MembraneMechError as exc:
        logger.warning("%s: no properties: %s", path.name, exc)
    return outcome


def _run_task(task: CurveTask) -> CurveOutcome:
    return analyze_file(task.path, task.sample_id, task.config, task.metadata)


def properties_row(outcome: CurveOutcome) -> Dict[str, Any]:
    props = outcome.properties
    meta = outcome.metadata
    return {
        "sample_id": outcome.sample_id,
        "position": outcome.position_index,
        "wt_pct": meta.polymer_wt_pct if meta else None,
        "humidity_group": outcome.humidity_group,
        "modulus_bar": props.elastic_modulus,
        "yield_bar": props.yield_strength,
        "pore_fraction": props.pore_fraction,
        "creep_strain": props.creep_strain,
        "flags": [f.value for f in props.flags],
        "compressibility": props.compressibility,
    }


class SampleReport(BaseModel):
    """Aggregated results for one sample."""

    sample_id: str
    outcomes: List[CurveOutcome]
    consistency: Optional[ConsistencyReport] = None
    quality: QualityReport

    @property
    def first_metadata(self) -> Optional[SampleMetadata]:
        return next((o.metadata for o in self.outcomes if o.metadata), None)

    @property
    def humidity_group(self) -> Optional[str]:
        return next((o.humidity_group for o in self.outcomes if o.humidity_group), None)

    def cv_row(self) -> Dict[str, Any]:
        meta = self.first_metadata
        fab = meta.fabrication_method if meta else None
        return {
            "sample_id": self.sample_id,
            "n_curves": self.consistency.n_curves if self.consistency else self.quality.n_curves,
            "cv": self.consistency.cv if self.consistency else None,
            "pass_fail": "pass" if self.quality.passed else "fail",
            "reasons": self.quality.reasons,
            "wt_pct": meta.polymer_wt_pct if meta else None,
            "humidity_group": self.humidity_group,
            "fabrication_method": fab.value if fab else None,
        }


class CampaignReport(BaseModel):
    """Result bundle of a campaign run."""

    samples: List[SampleReport]
    trends: List[TrendFit] = Field(default_factory=list)

    @property
    def outcomes(self) -> List[CurveOutcome]:
        return [o for s in self.samples for o in s.outcomes]

    @property
    def errors(self) -> List[ErrorRecord]:
        return [o.error for o in self.outcomes if o.error is not None]

    @property
    def exit_code(self) -> int:
        """0 when every file was analyzed, 2 on partial failure."""
        return 2 if self.errors else 0

    def properties_rows(self) -> List[Dict[str, Any]]:
        return [properties_row(o) for o in self.outcomes if o.properties is not None]

    def properties_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.properties_rows(), columns=schemas.PROPERTIES.columns)

    def cv_rows(self) -> List[Dict[str, Any]]:
        return [s.cv_row() for s in self.samples]

    def cv_summary_rows(self) -> List[Dict[str, Any]]:
        rows: List[Dict[str, Any]] = []
        cv = pd.DataFrame(self.cv_rows(), columns=schemas.CV.columns)
        for by in ("fabrication_method", "wt_pct"):
            for record in summarize_cv(cv, by=by).to_dict("records"):
                rows.append({"by": by, **record})
        return rows


def summarize_sample(
    sample_id: str,
    outcomes: List[CurveOutcome],
    cfg: MembraneMechConfig,
) -> SampleReport:
    """Consistency and quality over the analyzed curves of one sample."""
    curves = [o.curve for o in outcomes if o.curve is not None]
    segs = [o.segmentation for o in outcomes if o.segmentation is not None]
    consistency = None
    if len(curves) >= 2:
        try:
            consistency = intra_sample_cv(curves, cfg.quality.cv_grid_points)
        except MembraneMechError as exc:
            logger.warning("%s: no cv: %s", sample_id, exc)
    quality = assess_quality(segs, cfg.quality, sample_id=sample_id)
    return SampleReport(
        sample_id=sample_id, outcomes=outcomes, consistency=consistency, quality=quality
    )


class CampaignRunner:
    """
    Orchestrates a campaign.

    1. Validate manifest, build one task per data file
    2. Analyze files in a bounded worker pool (input order preserved)
    3. Aggregate per sample, fit trends
    4. Write tables and plots from this process
    """

    def __init__(
        self,
        manifest: CampaignManifest,
        config: Optional[MembraneMechConfig] = None,
        jobs: Optional[int] = None,
        output_format: Optional[str] = None,
    ) -> None:
        self.manifest = manifest
        self.config = (config or MembraneMechConfig()).with_overrides(manifest.config)
        self.jobs = jobs or self.config.campaign.jobs or os.cpu_count() or 1
        self.output_format = output_format or self.config.campaign.output_format

    @classmethod
    def from_manifest(
        cls,
        path: str | Path,
        config_path: Optional[str | Path] = None,
        **kwargs: Any,
    ) -> "CampaignRunner":
        """Create a runner from a manifest file and the resolved config."""
        return cls(CampaignManifest.load(path), resolve_config(config_path), **kwargs)

    def tasks(self) -> List[CurveTask]:
        return [
            CurveTask(
                sample_id=entry.sample_id,
                path=str(self.manifest.resolve(f)),
                metadata=entry.metadata,
                config=self.config,
            )
            for entry in self.manifest.samples
            for f in entry.files
        ]

    def _execute(self, tasks: List[CurveTask]) -> Iterable[CurveOutcome]:
        if self.jobs <= 1 or len(tasks) <= 1:
            return [_run_task(t) for t in tasks]
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(_run_task, tasks))

    def run(self) -> CampaignReport:
        """Analyze every sample; per-file failures are isolated."""
        self.manifest.validate_inputs()
        tasks = self.tasks()
        logger.info("analyzing %d files with %d workers", len(tasks), self.jobs)

        by_sample: "OrderedDict[str, List[CurveOutcome]]" = OrderedDict()
        for outcome in self._execute(tasks):
            by_sample.setdefault(outcome.sample_id, []).append(outcome)

        samples = [summarize_sample(sid, outs, self.config) for sid, outs in by_sample.items()]
        report = CampaignReport(samples=samples)
        report.trends = fit_trends(report.properties_frame())
        logger.info(
            "campaign complete: %d properties rows, %d errors",
            len(report.properties_rows()),
            len(report.errors),
        )
        return report

    def write(self, report: CampaignReport, out_dir: Optional[str | Path] = None) -> Path:
        """Write every table, segmentation record and plot; returns the directory."""
        out = Path(out_dir) if out_dir else self.manifest.output_path
        out.mkdir(parents=True, exist_ok=True)
        fmt = self.output_format
        tables: List[Tuple[Any, List[Dict[str, Any]]]] = [
            (schemas.PROPERTIES, report.properties_rows()),
            (schemas.CV, report.cv_rows()),
            (schemas.CV_SUMMARY, report.cv_summary_rows()),
            (
                schemas.TRENDS,
                [{**t.model_dump(), "slope_sign": t.slope_sign} for t in report.trends],
            ),
            (schemas.ERRORS, [e.model_dump() for e in report.errors]),
        ]
        for schema, rows in tables:
            count = open_table_sink(fmt, out, schema).write(rows)
            logger.info("wrote %d %s rows", count, schema.name)

        seg_dir = out / "segments"
        seg_dir.mkdir(exist_ok=True)
        for o in report.outcomes:
            if o.segmentation is not None:
                name = f"{o.sample_id}_p{o.position_index}.seg.txt"
                write_segmentation_record(o.segmentation, seg_dir / name)

        plotted = {
            s.sample_id: [
                (o.curve, o.segmentation)
                for o in s.outcomes
                if o.curve is not None and o.segmentation is not None
            ]
            for s in report.samples
        }
        plotted = {k: v for k, v in plotted.items() if v}
        if plotted or report.properties_rows():
            plot_report(report.properties_frame(), report.trends, plotted, out / "plots")
        return out


def run_campaign(
    manifest_path: str | Path,
    config_path: Optional[str | Path] = None,
    out_dir: Optional[str | Path] = None,
    jobs: Optional[int] = None,
    output_format: Optional[str] = None,
) -> CampaignReport:
    """Load, run and write a campaign in one call."""
    runner = CampaignRunner.from_manifest(
        manifest_path, config_path, jobs=jobs, output_format=output_format
    )
    report = runner.run()
    runner.write(report, out_dir)
    return report
