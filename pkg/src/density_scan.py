# --- START OF FILE density_scan.py ---
"""
The per-generation density minimization.

For every centre x of the cloud, distances to all cloud points are sorted and the
cumulative weight gives mu_g(B(x, d)) at each distance d (tie groups counted whole).
h(x, d) = (2d)^s / mu_g(B(x, d)) is evaluated only at witnesses whose first code
symbol differs from the centre's, and m~_g is the minimum over all centres.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional

import numpy as np

import constants
from debug_logging import log_debug, log_error, log_info, log_warning
from errors import BudgetExceededError, MeasureOracleError, SscViolationError
from ifs_core import IFSystem
from measure_oracle import measure_bracket
from models import DensityRecord, ScheduleResult, SscStatus
from pointcloud import PointCloud, code_images, initial_cloud, refine
from utils import canonical_code
from worker import run_chunks


@dataclass(frozen=True)
class BallProfile:
    """Sorted distances from one or more centres with the ball measure at each."""
    distances: np.ndarray     # (k, N) ascending per row
    witnesses: np.ndarray     # (k, N) cloud index of the point at each sorted position
    measures: np.ndarray      # (k, N) mu_g of the closed ball reaching that position
    admissible: np.ndarray    # (k, N) first symbols differ from the centre's


def _closure_slack(radius, tie_tol: float):
    return tie_tol * np.maximum(1.0, radius)


def profile_rows(cloud: PointCloud, rows: slice, tie_tol: float = constants.TIE_TOL) -> BallProfile:
    """Sorted-cumulative ball measures for the centres cloud.coords[rows]."""
    coords = cloud.coords
    centers = coords[rows]
    dist = np.linalg.norm(centers[:, None, :] - coords[None, :, :], axis=-1)
    order = np.argsort(dist, axis=1, kind="stable")
    sorted_dist = np.take_along_axis(dist, order, axis=1)
    cumulative = np.cumsum(cloud.weights[order], axis=1)

    # Each position counts every point within the closure slack of its own distance
    reach = sorted_dist + _closure_slack(sorted_dist, tie_tol)
    group_end = np.stack([np.searchsorted(row, limit, side="right") - 1 for row, limit in zip(sorted_dist, reach)])
    measures = np.take_along_axis(cumulative, group_end, axis=1)

    first = cloud.first_symbols
    admissible = first[order] != first[rows][:, None]
    return BallProfile(sorted_dist, order, measures, admissible)


def sorted_ball_profile(cloud: PointCloud, center_index: int, tie_tol: float = constants.TIE_TOL) -> BallProfile:
    """Profile of a single centre, rows squeezed out."""
    p = profile_rows(cloud, slice(center_index, center_index + 1), tie_tol)
    return BallProfile(p.distances[0], p.witnesses[0], p.measures[0], p.admissible[0])


def ball_discrete_measure(cloud: PointCloud, center, radius: float, tie_tol: float = constants.TIE_TOL) -> float:
    """mu_g of the closed ball, by direct summation over the cloud."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    center = np.asarray(center, dtype=float)
    dist = np.linalg.norm(cloud.coords - center, axis=1)
    inside = dist <= radius + _closure_slack(radius, tie_tol)
    return math.fsum(cloud.weights[inside].tolist())


def _chunk_slices(n_points: int) -> List[slice]:
    step = max(constants.SCAN_MIN_CHUNK, constants.SCAN_CHUNK_CELLS // max(1, n_points))
    return [slice(a, min(n_points, a + step)) for a in range(0, n_points, step)]


def _scan_chunk(cloud: PointCloud, rows: slice, s: float, tie_tol: float):
    """Chunk minimum of h and every (centre, witness, h, d, mu) pair close to it."""
    profile = profile_rows(cloud, rows, tie_tol)
    with np.errstate(divide="ignore"):
        h = np.where(profile.admissible, (2.0 * profile.distances) ** s / profile.measures, np.inf)
    chunk_min = float(h.min())
    r_idx, c_idx = np.nonzero(h <= chunk_min * (1.0 + constants.MINIMIZER_REL_TOL))
    candidates = [
        (rows.start + int(r), int(profile.witnesses[r, c]), float(h[r, c]),
         float(profile.distances[r, c]), float(profile.measures[r, c]))
        for r, c in zip(r_idx, c_idx)
    ]
    return chunk_min, candidates


def scan_generation(cloud: PointCloud, tie_tol: float = constants.TIE_TOL, workers=1) -> DensityRecord:
    """
    Minimum of the discrete inverse density over admissible (centre, witness) pairs.

    Centres are split into fixed-size chunks independent of the worker count, and the
    lexicographically smallest (centre code, witness code) among the tied minimizers
    is reported, so the result does not depend on how many threads ran.
    """
    if cloud.size < cloud.system.m:
        raise ValueError("cloud has fewer points than maps")
    s = cloud.system.dimension_s
    results = run_chunks(lambda rows: _scan_chunk(cloud, rows, s, tie_tol), _chunk_slices(cloud.size), workers)

    global_min = min(chunk_min for chunk_min, _ in results)
    threshold = global_min * (1.0 + constants.MINIMIZER_REL_TOL)
    # Row index order is code order, so sorting indices sorts codes
    ties = sorted(c for _, cands in results for c in cands if c[2] <= threshold)
    center_idx, witness_idx, m_tilde, d_tilde, measure = ties[0]

    record = DensityRecord(
        generation=cloud.generation,
        m_tilde=m_tilde,
        center=cloud.point(center_idx),
        witness=cloud.point(witness_idx),
        d_tilde=d_tilde,
        ball_discrete_measure=measure,
        all_minimizers=[(tuple(int(v) for v in cloud.codes[c]), tuple(int(v) for v in cloud.codes[w]))
                        for c, w, _, _, _ in ties],
    )
    log_info("SCAN", f"generation {cloud.generation}: m~ = {m_tilde:.12g} at d~ = {d_tilde:.12g} "
                     f"({len(ties)} minimizing pair(s))")
    return record


def certify_record(record: DensityRecord, cloud: PointCloud, tie_tol: float = constants.TIE_TOL,
                   bracket_tol: Optional[float] = None,
                   node_budget: int = constants.DEFAULT_NODE_BUDGET) -> DensityRecord:
    """
    Decide whether mu_g(B) = mu(B) for the record's ball, else bound mu(B) from below.

    Certified when every cylinder whose cloud point lies in the ball is enclosed by it
    and every other cylinder is disjoint from it; then m~ itself bounds C^s(E) from
    above. Otherwise the bound is (2d)^s over the oracle's lower bracket, and m~ is
    still flagged as a bound when that lower bracket reaches mu_g(B).
    """
    system = cloud.system
    center = np.asarray(record.center.coords, dtype=float)
    radius = record.d_tilde
    limit = radius + _closure_slack(radius, tie_tol)

    enc_center, enc_radius = system.enclosure
    rho_a = cloud.cylinder_ratios * system.geometry.diameter_up
    rho_e = cloud.cylinder_ratios * enc_radius
    dist_a = np.linalg.norm(cloud.coords - center, axis=1)
    dist_e = np.linalg.norm(code_images(cloud, enc_center) - center, axis=1)

    in_ball = dist_a <= limit
    enclosed = (dist_a + rho_a <= limit) | (dist_e + rho_e <= limit)
    disjoint = (dist_a - rho_a > limit) | (dist_e - rho_e > limit)
    certified = bool(np.all(np.where(in_ball, enclosed, disjoint)))

    if certified:
        log_debug("SCAN", f"generation {record.generation}: ball decided cylinder by cylinder")
        return replace(record, certified=True, certified_upper_bound=record.m_tilde, m_tilde_certified=True)

    log_debug("SCAN", f"generation {record.generation}: {int(np.sum(~np.where(in_ball, enclosed, disjoint)))} "
                      f"undecided cylinder(s), falling back to the measure oracle")
    try:
        bracket = measure_bracket(system, center, radius, bracket_tol, node_budget, tie_tol)
    except MeasureOracleError as e:
        log_warning("SCAN", f"generation {record.generation}: no oracle bound ({e})")
        return replace(record, certified=False, certified_upper_bound=None)
    if bracket.lower <= 0.0:
        return replace(record, certified=False, certified_upper_bound=None)
    bound = (2.0 * limit) ** system.dimension_s / bracket.lower
    dominated = bracket.lower >= record.ball_discrete_measure
    if dominated:
        log_debug("SCAN", f"generation {record.generation}: mu(B) >= {bracket.lower:.12g} >= mu_g(B), m~ is a bound")
    return replace(record, certified=False, certified_upper_bound=bound, m_tilde_certified=dominated)


def stabilization_generation(records: List[DensityRecord]) -> Optional[int]:
    """Smallest g0 after which the canonical minimizer pairs no longer change."""
    if not records:
        return None
    keys = [frozenset((canonical_code(c), canonical_code(w)) for c, w in r.all_minimizers) for r in records]
    g0 = records[-1].generation
    for record, key in zip(reversed(records[:-1]), reversed(keys[:-1])):
        if key != keys[-1]:
            break
        g0 = record.generation
    return g0


def run_schedule(system: IFSystem, g_max: int,
                 tie_tol: float = constants.TIE_TOL,
                 bracket_tol: Optional[float] = None,
                 memory_budget: int = constants.DEFAULT_CLOUD_BUDGET,
                 node_budget: int = constants.DEFAULT_NODE_BUDGET,
                 workers=1,
                 certify: bool = True,
                 ssc_override: bool = False,
                 on_record: Optional[Callable[[DensityRecord], None]] = None) -> ScheduleResult:
    """
    Scan generations 0..g_max and report where the minimizer stabilizes.

    Raises:
        SscViolationError: SSC not certified (or coincident points found) without override.
        BudgetExceededError: a generation does not fit; partial_records holds the
            records computed so far.
    """
    if g_max < 0:
        raise ValueError(f"g_max must be >= 0, got {g_max}")

    status = system.ssc_status
    if status is not SscStatus.CERTIFIED:
        if not ssc_override:
            raise SscViolationError(f"strong separation is {status.value}; refusing to run", status=status)
        log_warning("SCAN", f"strong separation is {status.value}; continuing on override")

    result = ScheduleResult()
    cloud = initial_cloud(system)
    for g in range(g_max + 1):
        if g > 0:
            try:
                cloud = refine(cloud, memory_budget)
            except BudgetExceededError as e:
                log_error("SCAN", f"stopping before generation {g}: {e}")
                raise BudgetExceededError(str(e.args[0]), limit=e.limit, requested=e.requested,
                                          partial_records=result.records) from e
        if cloud.coincident and not ssc_override:
            raise SscViolationError(f"generation {g} has coincident points", status=SscStatus.VIOLATED)

        record = scan_generation(cloud, tie_tol, workers)
        if certify:
            record = certify_record(record, cloud, tie_tol, bracket_tol, node_budget)
        result.records.append(record)
        if on_record is not None:
            on_record(record)

    result.stabilized_at = stabilization_generation(result.records)
    if result.stabilized_at is not None:
        log_info("SCAN", f"m~ stabilized at generation {result.stabilized_at}, "
                         f"value {result.records[-1].m_tilde:.12g}")
    return result

# --- END OF FILE density_scan.py ---
