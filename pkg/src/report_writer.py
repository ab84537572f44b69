# --- START OF FILE report_writer.py ---
"""
Text report and per-generation CSV output.
"""

import csv
from typing import IO, Dict, List, Optional, Tuple

import constants
from debug_logging import log_debug
from ifs_core import IFSystem
from models import DensityRecord, ScheduleResult, SscStatus
from utils import canonical_code, format_code, format_float
from version import __app_name__, __version__


def record_to_row(record: DensityRecord, m: int) -> Dict[str, str]:
    """One CSV row; floats at 17 significant digits, codes as digit strings."""
    return {
        "generation": str(record.generation),
        "m_tilde": format_float(record.m_tilde),
        "d_tilde": format_float(record.d_tilde),
        "center_code": format_code(record.center.code, m),
        "witness_code": format_code(record.witness.code, m),
        "ball_measure": format_float(record.ball_discrete_measure),
        "certified": "true" if record.certified else "false",
        "upper_bound": format_float(record.certified_upper_bound),
    }


class CsvRecordWriter:
    """Writes one CSV row per generation and flushes it immediately."""

    def __init__(self, path, m: int):
        self.path = path
        self.m = m
        self._file: Optional[IO[str]] = None
        self._writer = None

    def __enter__(self):
        self._file = open(self.path, "w", newline="", encoding="utf-8")
        self._writer = csv.DictWriter(self._file, fieldnames=constants.CSV_COLUMNS)
        self._writer.writeheader()
        self._file.flush()
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._file is not None:
            self._file.close()
            self._file = None
        return False

    def write(self, record: DensityRecord) -> None:
        self._writer.writerow(record_to_row(record, self.m))
        self._file.flush()
        log_debug("MAIN", f"CSV row for generation {record.generation} written to '{self.path}'")


def read_csv(path) -> List[Dict[str, object]]:
    """Read a CSV written by CsvRecordWriter back into typed values."""
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as f:
        for raw in csv.DictReader(f):
            rows.append({
                "generation": int(raw["generation"]),
                "m_tilde": float(raw["m_tilde"]),
                "d_tilde": float(raw["d_tilde"]),
                "center_code": raw["center_code"],
                "witness_code": raw["witness_code"],
                "ball_measure": float(raw["ball_measure"]),
                "certified": raw["certified"] == "true",
                "upper_bound": float(raw["upper_bound"]) if raw["upper_bound"] else None,
            })
    return rows


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else format_float(value, constants.REPORT_SIGNIFICANT_DIGITS)


def _cert_label(record: DensityRecord) -> str:
    if record.certified:
        return "yes"
    return "m~" if record.m_tilde_certified else "no"


def _code_label(code, m: int) -> str:
    short = canonical_code(code)
    full = format_code(code, m)
    return full if len(short) == len(code) else f"{full} ({format_code(short, m)})"


def format_report(label: str, system: IFSystem, result: ScheduleResult,
                  ssc_status: SscStatus,
                  density_interval: Optional[Tuple[float, float]] = None,
                  aborted: Optional[str] = None) -> str:
    """Human-readable summary of one run."""
    geo = system.geometry
    lines = [
        f"{__app_name__} {__version__}",
        f"system: {label} (m={system.m}, n={system.ambient_dim})",
        f"similarity dimension s = {format_float(system.dimension_s)}",
        f"strong separation: {ssc_status.value} (geometry depth {geo.depth_used})",
        f"diameter R in [{format_float(geo.diameter_low)}, {format_float(geo.diameter_up)}]",
        f"separation gap c in [{format_float(geo.gap_low)}, {format_float(geo.gap_up)}]",
        "",
    ]

    header = f"{'g':>3}  {'m_tilde':>10}  {'d_tilde':>10}  {'ball':>10}  {'cert':>5}  {'upper_bound':>11}  center -> witness"
    lines.append(header)
    lines.append("-" * len(header))
    for r in result.records:
        lines.append(
            f"{r.generation:>3}  {_fmt(r.m_tilde):>10}  {_fmt(r.d_tilde):>10}  {_fmt(r.ball_discrete_measure):>10}  "
            f"{_cert_label(r):>5}  {_fmt(r.certified_upper_bound):>11}  "
            f"{_code_label(r.center.code, system.m)} -> {_code_label(r.witness.code, system.m)}"
        )
    lines.append("")

    if result.stabilized_at is not None and result.records:
        lines.append(f"m̃ stabilized at generation {result.stabilized_at}, value {_fmt(result.records[-1].m_tilde)}")
    best = result.best_certified()
    if best is not None:
        kind = "certified" if best.certified else "oracle"
        lines.append(f"best certified upper bound: {_fmt(best.certified_upper_bound)} "
                     f"at generation {best.generation} ({kind})")
    else:
        lines.append("best certified upper bound: none")
    best_m = result.best_certified_m_tilde()
    if best_m is not None:
        kind = "certified" if best_m.certified else "oracle: mu(B) >= mu_g(B)"
        lines.append(f"smallest m̃ that is itself a bound: {_fmt(best_m.m_tilde)} at generation {best_m.generation} ({kind})")
    if density_interval is not None:
        low, high = density_interval
        lines.append(f"density interval of the final ball: [{_fmt(low)}, {_fmt(high)}]")
    if aborted:
        lines.append(f"ABORTED: {aborted}")
    return "\n".join(lines) + "\n"

# --- END OF FILE report_writer.py ---
