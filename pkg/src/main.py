#!/usr/bin/env python3
# --- START OF FILE src/main.py ---
import sys
import os
import argparse
import traceback
from typing import List, Optional, Tuple

import constants
import config_manager
import gallery
from debug_logging import log_error, log_important, log_info, log_warning, set_debug_mode, set_quiet_mode
from density_scan import run_schedule
from errors import (BudgetExceededError, GalleryError, IfsError, SscViolationError,
                    SystemValidationError)
from ifs_core import IFSystem
from measure_oracle import certified_density_interval
from models import RunConfig, ScheduleResult, SscStatus
from parsers.system_file import parse_system_file
from paths import IS_FROZEN, resolve_output_path
from pointcloud import build_cloud
from report_writer import CsvRecordWriter, format_report
from svg_plot import write_svg
from version import __app_name__, get_version_info


class RawDefaultsHelpFormatter(argparse.ArgumentDefaultsHelpFormatter, argparse.RawDescriptionHelpFormatter):
    pass


def _workers_arg(text: str):
    if text == "auto":
        return "auto"
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"workers must be >= 1 or 'auto', got {text}")
    return value


def _count_arg(text: str) -> int:
    """Accepts '2000000' or '2e6'."""
    value = float(text)
    if value < 1 or value != int(value):
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return int(value)


def _positive_float_arg(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; defaults come from the user settings file, then from constants."""
    prog_name = os.path.basename(sys.argv[0]) if IS_FROZEN else "python src/main.py"

    parser = argparse.ArgumentParser(
        description=f"{__app_name__}: centered Hausdorff measure of self-similar sets",
        formatter_class=RawDefaultsHelpFormatter,
        epilog=(
            "Examples:\n"
            f"  Middle-third Cantor set, generations 0..8:\n"
            f"    {prog_name} --gallery cantor-1-3 --g-max 8\n\n"
            f"  Planar 1/4 Cantor dust with CSV, SVG and the final density interval:\n"
            f"    {prog_name} --gallery quarter-cantor --g-max 6 --certify --csv out.csv --svg out.svg\n\n"
            f"  A system from a JSON file:\n"
            f"    {prog_name} --system my_ifs.json --g-max 5\n"
        ),
    )

    source_group = parser.add_argument_group('Input', 'Exactly one system source is required.')
    source = source_group.add_mutually_exclusive_group()
    source.add_argument('--gallery', metavar='NAME', help="Gallery entry, e.g. 'cantor-1-3' or 'sierpinski(1/3)'.")
    source.add_argument('--system', metavar='PATH', help='JSON system definition file.')
    source_group.add_argument('--list-gallery', action='store_true', help='List gallery entries and exit.')

    comp_group = parser.add_argument_group('Computation')
    comp_group.add_argument('--g-max', type=int,
                            default=config_manager.get_int("g_max", constants.DEFAULT_G_MAX, minimum=0),
                            help='Last generation to scan.')
    comp_group.add_argument('--tie-tol', type=_positive_float_arg,
                            default=config_manager.get_positive_float("tie_tol", constants.TIE_TOL),
                            help='Relative tolerance under which two distances are equal.')
    comp_group.add_argument('--bracket-tol', type=_positive_float_arg, default=None,
                            help=f'Geometric resolution of the measure oracle (default: '
                                 f'{constants.DEFAULT_BRACKET_TOL_FACTOR:g} * R_up).')
    comp_group.add_argument('--budget', type=_count_arg,
                            default=config_manager.get_int("memory_budget", constants.DEFAULT_CLOUD_BUDGET),
                            help='Max points in one cloud.')
    comp_group.add_argument('--node-budget', type=_count_arg,
                            default=config_manager.get_int("node_budget", constants.DEFAULT_NODE_BUDGET),
                            help='Max cylinder visits per oracle call.')
    comp_group.add_argument('--workers', type=_workers_arg,
                            default=config_manager.get_setting("workers", constants.DEFAULT_WORKERS),
                            help="Scan threads, or 'auto'.")
    comp_group.add_argument('--certify', action='store_true',
                            help='Also bracket the density of the final minimizing ball.')
    comp_group.add_argument('--allow-unverified-ssc', action='store_true',
                            help='Run even when strong separation is not certified.')

    out_group = parser.add_argument_group('Output')
    out_group.add_argument('--report', metavar='PATH', help='Text report path (default: stdout).')
    out_group.add_argument('--csv', metavar='PATH', help='Per-generation CSV path.')
    out_group.add_argument('--svg', metavar='PATH', help='SVG of the final cloud and ball (1D/2D only).')
    out_group.add_argument('--debug', action='store_true', help='Verbose logging.')
    out_group.add_argument('--quiet', action='store_true', help='Only warnings and errors on stderr.')
    out_group.add_argument('--version', action='store_true', help='Print version information and exit.')
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(
        gallery=args.gallery,
        system_path=args.system,
        g_max=args.g_max,
        tie_tol=args.tie_tol,
        bracket_tol=args.bracket_tol,
        memory_budget=args.budget,
        node_budget=args.node_budget,
        workers=args.workers,
        report_path=args.report,
        csv_path=args.csv,
        svg_path=args.svg,
        certify=args.certify,
        ssc_override=args.allow_unverified_ssc,
    )
    config.validate()
    return config


def _load_system(config: RunConfig) -> Tuple[IFSystem, str]:
    if config.gallery is not None:
        entry = gallery.get(config.gallery)
        return entry.system, entry.name
    return parse_system_file(config.system_path), os.path.basename(config.system_path)


def _emit_report(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(resolve_output_path(path), "w", encoding="utf-8") as f:
        f.write(text)
    log_info("MAIN", f"Report written to '{path}'")


def run_and_report(config: RunConfig) -> int:
    """
    Run the full pipeline for a validated configuration.

    Returns:
        EXIT_OK, EXIT_ABORTED (SSC, budget, I/O, numerical failure) or EXIT_BAD_INPUT.
    """
    try:
        system, label = _load_system(config)
    except (SystemValidationError, GalleryError) as e:
        log_error("MAIN", f"Invalid system: {e}")
        return constants.EXIT_BAD_INPUT
    except OSError as e:
        log_error("MAIN", f"Cannot read system file: {e}")
        return constants.EXIT_BAD_INPUT

    if config.svg_path and system.ambient_dim > 2:
        log_error("MAIN", f"SVG output is available for 1D and 2D systems only; this one is {system.ambient_dim}D")
        return constants.EXIT_BAD_INPUT

    log_info("MAIN", f"{label}: m={system.m}, n={system.ambient_dim}, s={system.dimension_s:.12g}")
    try:
        status = system.ssc_status
    except IfsError as e:
        log_error("MAIN", f"Geometry estimation failed: {e}")
        return constants.EXIT_ABORTED
    if status is not SscStatus.CERTIFIED and not config.ssc_override:
        log_error("MAIN", f"Strong separation is {status.value}; pass --allow-unverified-ssc to run anyway")
        return constants.EXIT_ABORTED
    if status is not SscStatus.CERTIFIED:
        log_important("MAIN", f"Strong separation is {status.value}; results are not guaranteed to bound C^s")

    result = ScheduleResult()
    aborted = None
    exit_code = constants.EXIT_OK
    try:
        schedule_kwargs = dict(
            tie_tol=config.tie_tol,
            bracket_tol=config.bracket_tol,
            memory_budget=config.memory_budget,
            node_budget=config.node_budget,
            workers=config.workers,
            ssc_override=config.ssc_override,
        )
        if config.csv_path:
            with CsvRecordWriter(resolve_output_path(config.csv_path), system.m) as writer:
                result = run_schedule(system, config.g_max, on_record=writer.write, **schedule_kwargs)
        else:
            result = run_schedule(system, config.g_max, **schedule_kwargs)
    except BudgetExceededError as e:
        log_error("MAIN", f"Budget exhausted: {e}")
        result = ScheduleResult(records=e.partial_records)
        aborted, exit_code = f"budget exhausted: {e}", constants.EXIT_ABORTED
    except SscViolationError as e:
        log_error("MAIN", str(e))
        aborted, exit_code = str(e), constants.EXIT_ABORTED
    except OSError as e:
        log_error("MAIN", f"Cannot write CSV: {e}")
        return constants.EXIT_ABORTED
    except IfsError as e:
        log_error("MAIN", f"Computation failed: {e}")
        return constants.EXIT_ABORTED

    interval = None
    if config.certify and exit_code == constants.EXIT_OK and result.records:
        final = result.records[-1]
        try:
            interval = certified_density_interval(
                system, final.center.coords, final.d_tilde, config.bracket_tol,
                node_budget=config.node_budget, tie_tol=config.tie_tol)
        except IfsError as e:
            log_warning("MAIN", f"No density interval for the final ball: {e}")

    try:
        _emit_report(format_report(label, system, result, status, interval, aborted), config.report_path)
        if config.svg_path and exit_code == constants.EXIT_OK and result.records:
            final_cloud = build_cloud(system, result.records[-1].generation, config.memory_budget)
            write_svg(final_cloud, result.records[-1], resolve_output_path(config.svg_path))
    except OSError as e:
        log_error("MAIN", f"Cannot write output: {e}")
        return constants.EXIT_ABORTED
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0; argparse usage errors exit 2
        return int(e.code or 0)

    set_debug_mode(args.debug)
    set_quiet_mode(args.quiet)

    if args.version:
        info = get_version_info()
        print(f"{info['app_name']} {info['version']}")
        return constants.EXIT_OK
    if args.list_gallery:
        for name in gallery.list_names():
            print(name)
        print()
        for entry in gallery.catalog():
            print(gallery.describe(entry))
        return constants.EXIT_OK

    try:
        config = config_from_args(args)
    except ValueError as e:
        log_error("MAIN", str(e))
        parser.print_usage(sys.stderr)
        return constants.EXIT_BAD_INPUT

    try:
        return run_and_report(config)
    except KeyboardInterrupt:
        log_error("MAIN", "Interrupted")
        return constants.EXIT_ABORTED
    except Exception as e:
        log_error("MAIN", f"Unexpected error: {e}\n{traceback.format_exc()}")
        return constants.EXIT_ABORTED


if __name__ == "__main__":
    sys.exit(main())

# --- END OF FILE src/main.py ---
