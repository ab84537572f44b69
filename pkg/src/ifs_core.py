# --- START OF FILE ifs_core.py ---
"""
Iterated function systems of similitudes f(x) = r Q x + b on R^n.

Holds the validated system, its similarity dimension, the brackets for the attractor
diameter R = |E| and the first-level gap c, and the numeric strong-separation test.
"""

import math
from functools import cached_property
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

import constants
from debug_logging import log, log_debug, log_info, log_warning
from errors import DegenerateSystemError, GeometryError, SystemValidationError
from models import GeometryBounds, SscStatus


class Similitude:
    """One contracting similitude f(x) = ratio * orthogonal @ x + translation."""

    __slots__ = ("ratio", "orthogonal", "translation", "linear")

    def __init__(self, ratio: float, translation: Sequence[float], orthogonal: Optional[Sequence[Sequence[float]]] = None):
        try:
            ratio = float(ratio)
        except (TypeError, ValueError):
            raise SystemValidationError(f"ratio must be a number, got {ratio!r}", key_path="ratio")
        if not (math.isfinite(ratio) and 0.0 < ratio < 1.0):
            raise SystemValidationError(f"ratio must lie strictly inside (0, 1), got {ratio}", key_path="ratio")

        b = np.asarray(translation, dtype=float)
        if b.ndim != 1 or b.size == 0 or not np.all(np.isfinite(b)):
            raise SystemValidationError("translation must be a non-empty vector of finite numbers", key_path="translation")
        n = b.size

        if orthogonal is None:
            q = np.eye(n)
        else:
            q = np.asarray(orthogonal, dtype=float)
            if q.shape != (n, n):
                raise SystemValidationError(
                    f"orthogonal part must be {n}x{n}, got shape {q.shape}", key_path="orthogonal")
            if not np.all(np.isfinite(q)):
                raise SystemValidationError("orthogonal part has non-finite entries", key_path="orthogonal")
            defect = float(np.max(np.abs(q.T @ q - np.eye(n))))
            if defect > constants.ORTHOGONALITY_TOL:
                raise SystemValidationError(
                    f"matrix is not orthogonal (max |Q^T Q - I| = {defect:.3g})", key_path="orthogonal")
            # Polar factor: nearest orthogonal matrix, removes entry rounding
            u, _, vt = np.linalg.svd(q)
            q = u @ vt

        q.setflags(write=False)
        b.setflags(write=False)
        linear = ratio * q
        linear.setflags(write=False)
        object.__setattr__(self, "ratio", ratio)
        object.__setattr__(self, "orthogonal", q)
        object.__setattr__(self, "translation", b)
        object.__setattr__(self, "linear", linear)

    def __setattr__(self, name, value):
        raise AttributeError("Similitude is immutable")

    @property
    def dim(self) -> int:
        return self.translation.size

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Apply to one point (n,) or a stack of points (N, n)."""
        x = np.asarray(x, dtype=float)
        return x @ self.linear.T + self.translation

    def __repr__(self):
        return f"Similitude(ratio={self.ratio!r}, translation={self.translation.tolist()!r})"


def fixed_point(sim: Similitude) -> np.ndarray:
    """Solve (I - rQ) x = b; ratio < 1 keeps the system nonsingular."""
    return np.linalg.solve(np.eye(sim.dim) - sim.linear, sim.translation)


def solve_dimension(ratios: Sequence[float]) -> float:
    """
    Unique s >= 0 with sum(r_i^s) = 1, by bisection.

    The map s -> sum(r_i^s) is strictly decreasing, so bisection on [0, s_hi] always
    converges; s_hi is doubled from 1 until the sum drops below 1.
    """
    ratios = [float(r) for r in ratios]
    if len(ratios) < 2:
        raise DegenerateSystemError(
            f"an IFS needs at least two maps (got {len(ratios)}); a single map has a point attractor")

    def excess(s: float) -> float:
        return math.fsum(r ** s for r in ratios) - 1.0

    hi = 1.0
    while excess(hi) >= 0.0:
        hi *= 2.0
    lo = 0.0
    for _ in range(constants.DIMENSION_MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        value = excess(mid)
        if value == 0.0:
            lo = hi = mid
            break
        if value > 0.0:
            lo = mid
        else:
            hi = mid
    s = lo if abs(excess(lo)) <= abs(excess(hi)) else hi

    residual = abs(excess(s))
    if residual > constants.DIMENSION_RESIDUAL_TOL:
        log_warning("IFS", f"dimension residual {residual:.3g} above tolerance for ratios {ratios}")
    log_debug("IFS", f"similarity dimension s={s!r} (residual {residual:.3g})")
    return s


class IFSystem:
    """
    Validated list of m >= 2 similitudes on R^n.

    Derived quantities (dimension, geometry brackets, SSC status, enclosing ball) are
    computed on first access and never change afterwards.
    """

    def __init__(self, maps: Sequence[Similitude]):
        maps = list(maps)
        if len(maps) < 2:
            raise DegenerateSystemError(
                f"an IFS needs at least two maps (got {len(maps)})", key_path="maps")
        n = maps[0].dim
        for i, sim in enumerate(maps):
            if not isinstance(sim, Similitude):
                raise SystemValidationError(f"expected a Similitude, got {type(sim).__name__}", key_path=f"maps[{i}]")
            if sim.dim != n:
                raise SystemValidationError(
                    f"map acts on R^{sim.dim} but the system is {n}-dimensional", key_path=f"maps[{i}]")
        self._maps: Tuple[Similitude, ...] = tuple(maps)
        self.ambient_dim = n
        self.ratios = np.array([sim.ratio for sim in maps])
        self.ratios.setflags(write=False)
        self.r_max = float(self.ratios.max())

    @classmethod
    def from_parameters(cls, ratios: Sequence[float], translations: Sequence[Sequence[float]],
                        orthogonals: Optional[Sequence] = None) -> "IFSystem":
        if len(ratios) != len(translations):
            raise SystemValidationError("ratios and translations differ in length", key_path="maps")
        orthogonals = orthogonals if orthogonals is not None else [None] * len(ratios)
        return cls([Similitude(r, b, q) for r, b, q in zip(ratios, translations, orthogonals)])

    # --- Structure ---

    @property
    def maps(self) -> Tuple[Similitude, ...]:
        return self._maps

    @property
    def m(self) -> int:
        return len(self._maps)

    def __len__(self):
        return len(self._maps)

    def __repr__(self):
        return f"IFSystem(m={self.m}, n={self.ambient_dim}, ratios={self.ratios.tolist()})"

    @cached_property
    def linear_parts(self) -> np.ndarray:
        """(m, n, n) stack of r_i Q_i."""
        return np.stack([sim.linear for sim in self._maps])

    @cached_property
    def translations(self) -> np.ndarray:
        """(m, n) stack of b_i."""
        return np.stack([sim.translation for sim in self._maps])

    @cached_property
    def fixed_points(self) -> np.ndarray:
        """(m, n) fixed points, row i belonging to map i."""
        return np.stack([fixed_point(sim) for sim in self._maps])

    @property
    def is_homogeneous(self) -> bool:
        return bool(np.all(self.ratios == self.ratios[0]))

    # --- Derived constants ---

    @cached_property
    def dimension_s(self) -> float:
        return similarity_dimension(self)

    @cached_property
    def cylinder_weights(self) -> np.ndarray:
        """r_i^s for each map; sums to 1 (exactly 1/m each for equal ratios)."""
        if self.is_homogeneous:
            weights = np.full(self.m, 1.0 / self.m)
        else:
            weights = self.ratios ** self.dimension_s
        weights.setflags(write=False)
        return weights

    @cached_property
    def enclosure(self) -> Tuple[np.ndarray, float]:
        """
        A ball B(c, rho) containing E.

        With rho = max_i |f_i(c) - c| / (1 - r_i), every f_i maps B(c, rho) into itself,
        so the attractor lies inside it and each cylinder E_i lies in B(f_i(c), r_i rho).
        c is the centre of the fixed points' bounding box.
        """
        pts = self.fixed_points
        c = 0.5 * (pts.min(axis=0) + pts.max(axis=0))
        rho = max(float(np.linalg.norm(sim(c) - c)) / (1.0 - sim.ratio) for sim in self._maps)
        return c, rho

    @cached_property
    def geometry(self) -> GeometryBounds:
        return estimate_geometry(self, default_geometry_depth(self))

    @cached_property
    def ssc_status(self) -> SscStatus:
        return check_ssc(self, default_geometry_depth(self))

    # --- Transformations (used for invariance checks) ---

    def conjugate(self, rotation: np.ndarray, shift: Sequence[float]) -> "IFSystem":
        """System whose attractor is T(E) for the isometry T(x) = rotation @ x + shift."""
        rot = np.asarray(rotation, dtype=float)
        t = np.asarray(shift, dtype=float)
        maps = []
        for sim in self._maps:
            q = rot @ sim.orthogonal @ rot.T
            b = rot @ sim.translation + t - sim.ratio * (q @ t)
            maps.append(Similitude(sim.ratio, b, q))
        return IFSystem(maps)

    def scaled(self, factor: float) -> "IFSystem":
        """System whose attractor is factor * E (translations scaled)."""
        return IFSystem([Similitude(sim.ratio, factor * sim.translation, sim.orthogonal) for sim in self._maps])


def similarity_dimension(system: IFSystem) -> float:
    """Similarity dimension of a validated system (see solve_dimension)."""
    return solve_dimension(system.ratios.tolist())


# --- Geometry brackets ---

def iterate_levels(system: IFSystem, depth: int) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
    """
    Yield (level, coords, first_symbols) for levels 0..depth of the fixed-point cloud.

    Level k holds m^(k+1) points in code order; first_symbols[i] is the outermost map
    index of point i.
    """
    coords = system.fixed_points
    first = np.arange(system.m)
    yield 0, coords, first
    for level in range(1, depth + 1):
        blocks = [sim(coords) for sim in system.maps]
        coords = np.concatenate(blocks)
        first = np.repeat(np.arange(system.m), blocks[0].shape[0])
        yield level, coords, first


def _chunked_rows(n_rows: int, n_cols: int) -> Iterator[slice]:
    step = max(constants.SCAN_MIN_CHUNK, constants.SCAN_CHUNK_CELLS // max(1, n_cols))
    for start in range(0, n_rows, step):
        yield slice(start, min(n_rows, start + step))


def cloud_diameter_and_gap(coords: np.ndarray, first_symbols: np.ndarray) -> Tuple[float, float]:
    """Max pairwise distance, and min distance between points with different first symbols."""
    diameter = 0.0
    gap = math.inf
    for rows in _chunked_rows(coords.shape[0], coords.shape[0]):
        dist = np.linalg.norm(coords[rows, None, :] - coords[None, :, :], axis=-1)
        diameter = max(diameter, float(dist.max()))
        cross = first_symbols[rows, None] != first_symbols[None, :]
        if cross.any():
            gap = min(gap, float(dist[cross].min()))
    return diameter, gap


def default_geometry_depth(system: IFSystem) -> int:
    """Deepest level whose cloud stays under the point cap, deep enough that 2h < 1."""
    depth = 1
    while (depth < constants.DEFAULT_GEOMETRY_MAX_DEPTH
           and system.m ** (depth + 2) <= constants.GEOMETRY_POINT_CAP):
        depth += 1
    while 2.0 * system.r_max ** (depth + 1) >= 1.0:
        depth += 1
    return depth


def estimate_geometry(system: IFSystem, depth: int) -> GeometryBounds:
    """
    Brackets for R = |E| and c from the fixed-point clouds of levels 1..depth.

    Each code-length-(k+1) cylinder holds exactly one cloud point and has diameter at
    most h|E| with h = r_max^(k+1), so |E| <= D / (1 - 2h) and c >= c_hat - 2h|E|.
    Brackets from every level are intersected, so a deeper call never widens them.
    """
    if depth < 1:
        raise GeometryError(f"geometry depth must be >= 1, got {depth}")
    final_h = system.r_max ** (depth + 1)
    if 2.0 * final_h >= 1.0:
        raise GeometryError(
            f"depth {depth} too shallow to bracket |E|: 2 * r_max^{depth + 1} = {2 * final_h:.3g} >= 1")

    d_low, d_up = 0.0, math.inf
    c_low, c_up = -math.inf, math.inf
    for level, coords, first in iterate_levels(system, depth):
        if level == 0:
            continue
        h = system.r_max ** (level + 1)
        if 2.0 * h >= 1.0:
            continue
        diameter, c_hat = cloud_diameter_and_gap(coords, first)
        d_low = max(d_low, diameter)
        d_up = min(d_up, diameter / (1.0 - 2.0 * h))
        c_up = min(c_up, c_hat)
        c_low = max(c_low, c_hat - 2.0 * h * d_up)

    bounds = GeometryBounds(
        diameter_low=d_low, diameter_up=d_up,
        gap_low=c_low, gap_up=c_up,
        depth_used=depth,
    )
    log_info("IFS", f"geometry at depth {depth}: R in [{d_low:.12g}, {d_up:.12g}], "
                    f"c in [{c_low:.12g}, {c_up:.12g}]")
    return bounds


def check_ssc(system: IFSystem, depth: int) -> SscStatus:
    """
    Numeric strong-separation test.

    certified when c_low > 0; violated when two first-level cylinders share a cloud
    point exactly (c_hat == 0); inconclusive otherwise.
    """
    bounds = estimate_geometry(system, depth) if depth != default_geometry_depth(system) else system.geometry
    if bounds.gap_low > 0.0:
        status = SscStatus.CERTIFIED
    elif bounds.gap_up <= 0.0:
        status = SscStatus.VIOLATED
    else:
        status = SscStatus.INCONCLUSIVE
    level = "INFO" if status is SscStatus.CERTIFIED else "WARNING"
    log("IFS", f"SSC {status.value} at depth {depth} (c_low = {bounds.gap_low:.6g})", level)
    return status

# --- END OF FILE ifs_core.py ---
