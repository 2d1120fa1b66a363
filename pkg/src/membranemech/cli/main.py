"""
membranemech CLI: analyze compression tests, plan dilutions, size pores.

Usage::

    membranemech analyze <file>
    membranemech cv <dir>
    membranemech plan-dilution --stock psf17:17 --stock solvent:0 --target 12 --mass 10
    membranemech psd <dir>
    membranemech synth --campaign --out demo --seed 7
    membranemech campaign <manifest> --jobs 4
    membranemech trend <properties.csv>

Exit codes: 0 success, 1 fatal error, 2 partial failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, List, Mapping

FORMATS = ("csv", "json-lines")


def main(argv: list[str] | None = None) -> int:
    """CLI entry point."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file (default: $MEMBRANE_MECH_CONFIG)")
    common.add_argument("--out", help="Output directory (default: tables go to stdout)")
    common.add_argument("--seed", type=int, default=0, help="Random seed for generators")
    common.add_argument("--jobs", type=int, help="Worker processes (default: CPU count)")
    common.add_argument("--format", choices=FORMATS, help="Table file format")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        prog="membranemech",
        description="Mechanical and pore-structure analysis of polymer membranes.",
    )
    sub = parser.add_subparsers(dest="command", help="Available commands")

    # analyze
    p_analyze = sub.add_parser(
        "analyze", parents=[common], help="Segment one test file and extract properties"
    )
    p_analyze.add_argument("file", help="Force-displacement CSV with a .meta sidecar")

    # cv
    p_cv = sub.add_parser("cv", parents=[common], help="Intra-sample CV and pass/fail")
    p_cv.add_argument("directory", help="Directory of test CSVs with sidecars")

    # plan-dilution
    p_plan = sub.add_parser(
        "plan-dilution", parents=[common], help="Lever-rule dilution worklist"
    )
    p_plan.add_argument(
        "--stock",
        action="append",
        required=True,
        metavar="LABEL:WT",
        help="Available stock, e.g. psf17:17 (repeatable)",
    )
    p_plan.add_argument(
        "--target", action="append", type=float, required=True, help="Target wt%% (repeatable)"
    )
    p_plan.add_argument("--mass", type=float, default=10.0, help="Grams per target")

    # psd
    p_psd = sub.add_parser("psd", parents=[common], help="Pore-size distributions of masks")
    p_psd.add_argument("directory", help="Directory of PGM/PNG masks with sidecars")

    # synth
    p_synth = sub.add_parser("synth", parents=[common], help="Write synthetic test data")
    p_synth.add_argument("--campaign", action="store_true", help="Whole synthetic campaign")
    p_synth.add_argument("--sample-id", default="synth", help="Sample id of a single sample")
    p_synth.add_argument("--positions", type=int, default=4, help="Test positions per sample")
    p_synth.add_argument("--modulus", type=float, default=166.1, help="Elastic modulus (bar)")
    p_synth.add_argument("--pore-fraction", type=float, default=0.57, help="Pore fraction")
    p_synth.add_argument(
        "--noise", type=float, default=0.0, help="Noise sigma as a fraction of max stress"
    )

    # campaign
    p_campaign = sub.add_parser("campaign", parents=[common], help="Run a campaign manifest")
    p_campaign.add_argument("manifest", help="Campaign manifest YAML")

    # trend
    p_trend = sub.add_parser("trend", parents=[common], help="Fit trends over properties")
    p_trend.add_argument("table", help="properties table (CSV or JSON lines)")

    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 0

    _configure_logging(args.verbose)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        elif args.command == "cv":
            return _cmd_cv(args)
        elif args.command == "plan-dilution":
            return _cmd_plan_dilution(args)
        elif args.command == "psd":
            return _cmd_psd(args)
        elif args.command == "synth":
            return _cmd_synth(args)
        elif args.command == "campaign":
            return _cmd_campaign(args)
        elif args.command == "trend":
            return _cmd_trend(args)
    except Exception as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1

    return 0


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _config(args: argparse.Namespace):
    from ..config.loader import resolve_config

    return resolve_config(args.config)


def _emit(
    args: argparse.Namespace,
    schema,
    rows: Iterable[Mapping[str, Any]],
    fmt: str,
) -> int:
    """Write a table to ``--out`` in ``fmt``, or to stdout without one."""
    from ..outputs import StdoutOutput, open_table_sink

    if args.out:
        return open_table_sink(fmt, args.out, schema).write(rows)
    return StdoutOutput(schema).write(rows)


def _cmd_analyze(args: argparse.Namespace) -> int:
    """Analyze a single test file and print its properties."""
    from ..outputs import schemas
    from ..plots import plot_sample
    from ..runner import analyze_file, properties_row
    from ..segment.records import write_segmentation_record

    file_path = Path(args.file)
    if not file_path.exists():
        print(f"File not found: {file_path}", file=sys.stderr)
        return 1

    cfg = _config(args)
    outcome = analyze_file(file_path, cfg=cfg)
    if outcome.error is not None:
        print(f"Error: {outcome.error.stage}: {outcome.error.message}", file=sys.stderr)
        return 1

    seg = outcome.segmentation
    rows = [properties_row(outcome)] if outcome.properties is not None else []
    _emit(args, schemas.PROPERTIES, rows, args.format or cfg.campaign.output_format)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_segmentation_record(seg, out / f"{file_path.stem}.seg.txt")
        plot_sample(outcome.sample_id, [(outcome.curve, seg)], out / f"{file_path.stem}.svg")

    if not seg.ok:
        print(f"segmentation failed: {seg.failure_reason}", file=sys.stderr)
        return 2
    if outcome.properties is None:
        print("no properties could be extracted", file=sys.stderr)
        return 2
    return 0


def _cmd_cv(args: argparse.Namespace) -> int:
    """Consistency and quality for every sample found in a directory."""
    from ..outputs import schemas
    from ..runner import CampaignManifest, CampaignRunner

    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"Directory not found: {directory}", file=sys.stderr)
        return 1

    cfg = _config(args)
    fmt = args.format or cfg.campaign.output_format
    runner = CampaignRunner(CampaignManifest.from_directory(directory), cfg, jobs=args.jobs)
    report = runner.run()
    _emit(args, schemas.CV, report.cv_rows(), fmt)
    if args.out:
        _emit(args, schemas.CV_SUMMARY, report.cv_summary_rows(), fmt)
        _emit(args, schemas.ERRORS, [e.model_dump() for e in report.errors], fmt)
    for error in report.errors:
        print(f"{error.file}: {error.stage}: {error.message}", file=sys.stderr)
    return report.exit_code


def _parse_stock(text: str):
    label, sep, value = text.rpartition(":")
    if not sep or not label:
        raise ValueError(f"stock must be LABEL:WT, got {text!r}")
    return label, float(value)


def _cmd_plan_dilution(args: argparse.Namespace) -> int:
    """Plan each target from the best-suited pair of stocks."""
    from ..errors import InfeasibleTargetError
    from ..formulate.dilution import (
        make_stock,
        plan_dilution,
        plans_to_worklist,
        recommend_diluent,
    )
    from ..outputs import schemas

    cfg = _config(args)
    stocks = [make_stock(label, wt, cfg.formulate) for label, wt in map(_parse_stock, args.stock)]

    plans = []
    failed: List[float] = []
    for target in args.target:
        try:
            a, b = recommend_diluent(stocks, target, cfg.formulate)
            plans.append(plan_dilution(a, b, target, args.mass, cfg.formulate))
        except InfeasibleTargetError as exc:
            print(f"target {target}: {exc}", file=sys.stderr)
            failed.append(target)

    rows = plans_to_worklist(plans).to_dict("records")
    _emit(args, schemas.WORKLIST, rows, args.format or cfg.campaign.output_format)
    if failed and not plans:
        return 1
    return 2 if failed else 0


def _cmd_psd(args: argparse.Namespace) -> int:
    """Coated and corrected PSDs per group of replicate masks."""
    from ..outputs import schemas
    from ..plots import plot_psd
    from ..psd.batch import analyze_masks, mask_paths

    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"Directory not found: {directory}", file=sys.stderr)
        return 1
    paths = mask_paths(directory)
    if not paths:
        print(f"No masks found in {directory}", file=sys.stderr)
        return 1

    cfg = _config(args)
    fmt = args.format or cfg.campaign.output_format
    result = analyze_masks(paths, cfg.psd)
    _emit(args, schemas.PSD, result.rows(), fmt)
    if args.out:
        _emit(args, schemas.ERRORS, result.errors, fmt)
        if result.aggregates:
            plot_psd(result.aggregates, Path(args.out) / "psd.svg")
    for error in result.errors:
        print(f"{error['file'] or error['sample_id']}: {error['message']}", file=sys.stderr)
    return 2 if result.errors else 0


def _cmd_synth(args: argparse.Namespace) -> int:
    """Write a synthetic sample or a whole synthetic campaign."""
    from ..synth.campaign import generate_campaign
    from ..synth.curves import write_synthetic_sample
    from ..synth.models import CurveSpec

    out = Path(args.out or ".")
    if args.campaign:
        manifest = generate_campaign(
            out, positions=args.positions, seed=args.seed, noise_fraction=args.noise
        )
        print(f"Wrote campaign manifest {manifest}")
        return 0

    nominal = CurveSpec(
        elastic_modulus=args.modulus,
        yield_strain=25.0 / args.modulus,
        plateau_slope=15.0,
        densification_onset_strain=args.pore_fraction,
        densification_slope=450.0,
    )
    for pos in range(args.positions):
        spec = nominal.model_copy(
            update={"noise_sigma": args.noise * nominal.max_stress, "seed": args.seed + pos}
        ).check()
        path = write_synthetic_sample(
            spec, out, args.sample_id, position_index=pos, humidity_pct=55.0
        )
        print(f"Wrote {path}")
    return 0


def _cmd_campaign(args: argparse.Namespace) -> int:
    """Run a campaign manifest end to end."""
    from ..runner import CampaignRunner

    runner = CampaignRunner.from_manifest(
        args.manifest, args.config, jobs=args.jobs, output_format=args.format
    )
    report = runner.run()
    out = runner.write(report, args.out)

    n_rows = len(report.properties_rows())
    print(f"Wrote {n_rows} property rows for {len(report.samples)} samples to {out}")
    if report.errors:
        print(f"{len(report.errors)} file(s) failed; see errors table", file=sys.stderr)
    return report.exit_code


def _cmd_trend(args: argparse.Namespace) -> int:
    """Fit modulus and pore-fraction trends from a properties table."""
    from ..outputs import read_table, schemas
    from ..trends import fit_trends

    table = Path(args.table)
    if not table.exists():
        print(f"File not found: {table}", file=sys.stderr)
        return 1

    cfg = _config(args)
    fits = fit_trends(read_table(table))
    if not fits:
        print("No trend could be fitted", file=sys.stderr)
        return 1
    rows = [{**fit.model_dump(), "slope_sign": fit.slope_sign} for fit in fits]
    _emit(args, schemas.TRENDS, rows, args.format or cfg.campaign.output_format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
