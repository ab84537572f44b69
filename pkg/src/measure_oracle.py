# --- START OF FILE measure_oracle.py ---
"""
Two-sided bracketing of mu(B(x, d)) by subdivision of the code tree.

Each cylinder E_i = f_i(E) has measure r_i^s and sits inside two balls:
B(f_i(p0), r_i R_up), with p0 the fixed point of map 0, and B(f_i(c), r_i rho) from the
system's invariant enclosure. A cylinder enclosed by the query ball counts towards both
ends, one disjoint from it counts towards neither, and the rest are split until their
enclosure radius drops below tol, where their mass counts towards the upper end only.
"""

import math
from typing import Optional, Tuple

import numpy as np

import constants
from debug_logging import log_debug
from errors import MeasureOracleError
from ifs_core import IFSystem
from models import MeasureBracket


def _closure_slack(radius: float, tie_tol: float) -> float:
    return tie_tol * max(1.0, radius)


def default_tol(system: IFSystem) -> float:
    return constants.DEFAULT_BRACKET_TOL_FACTOR * system.geometry.diameter_up


def _subdivide(system: IFSystem, center: np.ndarray, inner: float, outer: float, tol: float,
               node_budget: int) -> MeasureBracket:
    """
    Bracket mu of the shell {inner < |y - center| <= outer}; limits already include slack.

    The tree is expanded one level at a time; every node's decision depends only on
    the node, so the accumulated masses equal those of a depth-first walk.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    n = system.ambient_dim
    r_up = system.geometry.diameter_up
    enc_center, enc_radius = system.enclosure
    anchor = system.fixed_points[0]
    linear = system.linear_parts
    shifts = system.translations
    map_weights = system.cylinder_weights

    # Frontier: composite maps x -> A x + b, cylinder ratio and weight per node
    mats = np.eye(n)[None, :, :]
    vecs = np.zeros((1, n))
    ratios = np.ones(1)
    weights = np.ones(1)

    inside_mass, boundary_mass = [], []
    visited = 0
    depth = 0
    while ratios.size:
        visited += ratios.size
        if visited > node_budget:
            raise MeasureOracleError(
                f"node budget {node_budget} exhausted at depth {depth} (tol={tol:.3g}); raise the budget or the tolerance")

        inside = np.zeros(ratios.size, dtype=bool)
        outside = np.zeros(ratios.size, dtype=bool)
        rho_min = np.full(ratios.size, np.inf)
        for point, scale in ((anchor, r_up), (enc_center, enc_radius)):
            dist = np.linalg.norm(mats @ point + vecs - center, axis=1)
            rho = ratios * scale
            inside |= (dist - rho > inner) & (dist + rho <= outer)
            outside |= (dist + rho <= inner) | (dist - rho > outer)
            rho_min = np.minimum(rho_min, rho)
        outside &= ~inside
        straddle = ~(inside | outside)
        fine = straddle & (rho_min < tol)
        split = straddle & ~fine

        inside_mass.append(weights[inside])
        boundary_mass.append(weights[fine])

        if not split.any():
            break
        # Children F o f_j, ordered parent-major
        pm, pv = mats[split], vecs[split]
        child_mats = np.einsum("pij,mjk->pmik", pm, linear).reshape(-1, n, n)
        child_vecs = (np.einsum("pij,mj->pmi", pm, shifts) + pv[:, None, :]).reshape(-1, n)
        child_ratios = np.outer(ratios[split], system.ratios).ravel()
        child_weights = np.outer(weights[split], map_weights).ravel()
        mats, vecs, ratios, weights = child_mats, child_vecs, child_ratios, child_weights
        depth += 1

    inside_values = np.concatenate(inside_mass).tolist()
    lower = math.fsum(inside_values)
    upper = math.fsum(inside_values + np.concatenate(boundary_mass).tolist())
    lower = min(max(lower, 0.0), 1.0)
    upper = min(max(upper, lower), 1.0)
    return MeasureBracket(lower=lower, upper=upper, depth_reached=depth, nodes_visited=visited)


def measure_bracket(system: IFSystem, center, radius: float, tol: Optional[float] = None,
                    node_budget: int = constants.DEFAULT_NODE_BUDGET,
                    tie_tol: float = constants.TIE_TOL) -> MeasureBracket:
    """
    Bracket the invariant measure of the closed ball B(center, radius).

    Args:
        system: The IFS.
        center: Ball centre (n-vector).
        radius: Ball radius, >= 0.
        tol: Geometric resolution; defaults to DEFAULT_BRACKET_TOL_FACTOR * R_up.
        node_budget: Max cylinder visits before giving up.
        tie_tol: Closure slack, as in the scan.

    Raises:
        MeasureOracleError: if the node budget is exhausted.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if tol is None:
        tol = default_tol(system)
    center = np.asarray(center, dtype=float)
    bracket = _subdivide(system, center, -math.inf, radius + _closure_slack(radius, tie_tol), tol, node_budget)
    log_debug("ORACLE", f"mu(B(r={radius:.6g})) in [{bracket.lower:.15g}, {bracket.upper:.15g}] "
                        f"after {bracket.nodes_visited} nodes, depth {bracket.depth_reached}")
    return bracket


def shell_bracket(system: IFSystem, center, inner_radius: float, outer_radius: float,
                  tol: Optional[float] = None,
                  node_budget: int = constants.DEFAULT_NODE_BUDGET,
                  tie_tol: float = constants.TIE_TOL) -> MeasureBracket:
    """
    Bracket mu of the annulus B(center, outer) minus the closed ball B(center, inner).

    Together with measure_bracket(center, inner) it partitions B(center, outer).
    """
    if not 0 <= inner_radius <= outer_radius:
        raise ValueError(f"need 0 <= inner <= outer, got ({inner_radius}, {outer_radius})")
    if tol is None:
        tol = default_tol(system)
    center = np.asarray(center, dtype=float)
    return _subdivide(system, center,
                      inner_radius + _closure_slack(inner_radius, tie_tol),
                      outer_radius + _closure_slack(outer_radius, tie_tol),
                      tol, node_budget)


def certified_density_interval(system: IFSystem, center, radius: float, tol: Optional[float] = None,
                               node_budget: int = constants.DEFAULT_NODE_BUDGET,
                               tie_tol: float = constants.TIE_TOL) -> Tuple[float, float]:
    """
    ((2d)^s / upper, (2d')^s / lower) for the ball B(center, d).

    d' is the closure-inflated radius the bracket was actually taken at. With the centre
    on E the high end is an upper bound for the centered measure.

    Raises:
        MeasureOracleError: if the lower bracket is 0.
    """
    bracket = measure_bracket(system, center, radius, tol, node_budget, tie_tol)
    if bracket.lower <= 0.0:
        raise MeasureOracleError(
            f"ball of radius {radius:.6g} has zero certified mass at this resolution; no upper bound")
    s = system.dimension_s
    effective = radius + _closure_slack(radius, tie_tol)
    low = (2.0 * radius) ** s / bracket.upper
    high = (2.0 * effective) ** s / bracket.lower
    return low, high

# --- END OF FILE measure_oracle.py ---
