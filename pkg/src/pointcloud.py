# --- START OF FILE pointcloud.py ---
"""
Coded point clouds A_g and their discrete measures mu_g.

Generation g holds m^(g+1) points, one per code of length g+1 (outermost map first,
last symbol naming a fixed point). Arrays are stored in lexicographic code order, so
the row index of a point is also its rank among the codes.
"""

import csv
import math
from functools import cached_property
from typing import List

import numpy as np

import constants
from debug_logging import log_debug, log_warning
from errors import BudgetExceededError
from ifs_core import IFSystem
from models import CodedPoint
from utils import format_code, format_float


class PointCloud:
    """One generation of the fixed-point cloud together with its weights."""

    def __init__(self, system: IFSystem, generation: int, coords: np.ndarray, codes: np.ndarray,
                 weights: np.ndarray, cylinder_ratios: np.ndarray):
        for arr in (coords, codes, weights, cylinder_ratios):
            arr.setflags(write=False)
        self.system = system
        self.generation = generation
        self.coords = coords                    # (N, n)
        self.codes = codes                      # (N, g+1) int
        self.weights = weights                  # (N,) r_code^s
        self.cylinder_ratios = cylinder_ratios  # (N,) r_code

    def __len__(self):
        return self.coords.shape[0]

    def __repr__(self):
        return f"PointCloud(generation={self.generation}, points={len(self)}, n={self.coords.shape[1]})"

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    @property
    def first_symbols(self) -> np.ndarray:
        return self.codes[:, 0]

    def point(self, index: int) -> CodedPoint:
        return CodedPoint(
            coords=tuple(float(v) for v in self.coords[index]),
            code=tuple(int(c) for c in self.codes[index]),
            weight=float(self.weights[index]),
        )

    @cached_property
    def points(self) -> List[CodedPoint]:
        return [self.point(i) for i in range(self.size)]

    def index_of(self, code) -> int:
        """Row of the point with the given full code (codes are in lexicographic order)."""
        code = tuple(int(c) for c in code)
        if len(code) != self.generation + 1:
            raise ValueError(f"code {code} has length {len(code)}, expected {self.generation + 1}")
        index = 0
        for symbol in code:
            if not 0 <= symbol < self.system.m:
                raise ValueError(f"symbol {symbol} out of range for m={self.system.m}")
            index = index * self.system.m + symbol
        return index

    @cached_property
    def coincident(self) -> bool:
        """True when two distinct codes land on the same point (to COINCIDENCE_DECIMALS)."""
        # + 0.0 folds -0.0 into 0.0 so byte-wise row comparison sees them equal
        rounded = np.round(self.coords, constants.COINCIDENCE_DECIMALS) + 0.0
        distinct = np.unique(rounded, axis=0).shape[0]
        if distinct < self.size:
            log_warning("CLOUD", f"generation {self.generation}: {self.size - distinct} coincident point(s); "
                                 f"the strong separation condition is violated")
            return True
        return False

    def total_weight(self) -> float:
        return math.fsum(self.weights.tolist())


def initial_cloud(system: IFSystem) -> PointCloud:
    """Generation 0: the fixed points, point i carrying code (i,) and weight r_i^s."""
    codes = np.arange(system.m, dtype=np.int64)[:, None]
    return PointCloud(
        system, 0,
        coords=system.fixed_points.copy(),
        codes=codes,
        weights=system.cylinder_weights.copy(),
        cylinder_ratios=system.ratios.copy(),
    )


def refine(cloud: PointCloud, budget: int = constants.DEFAULT_CLOUD_BUDGET) -> PointCloud:
    """
    Generation g+1 from generation g: every map applied to every point.

    Block j of the output is f_j applied to the whole input with j prepended to each
    code; the input is in code order, so the output is too.

    Raises:
        BudgetExceededError: if m^(g+2) points would exceed the budget.
    """
    system = cloud.system
    requested = cloud.size * system.m
    if requested > budget:
        raise BudgetExceededError(
            f"generation {cloud.generation + 1} needs {requested} points", limit=budget, requested=requested)

    coords = np.concatenate([sim(cloud.coords) for sim in system.maps])
    prefix = np.repeat(np.arange(system.m, dtype=np.int64), cloud.size)[:, None]
    codes = np.hstack([prefix, np.tile(cloud.codes, (system.m, 1))])
    weights = np.concatenate([w * cloud.weights for w in system.cylinder_weights])
    ratios = np.concatenate([r * cloud.cylinder_ratios for r in system.ratios])

    log_debug("CLOUD", f"refined to generation {cloud.generation + 1}: {requested} points")
    return PointCloud(system, cloud.generation + 1, coords, codes, weights, ratios)


def build_cloud(system: IFSystem, generation: int, budget: int = constants.DEFAULT_CLOUD_BUDGET) -> PointCloud:
    """Refine from the fixed points up to the requested generation."""
    cloud = initial_cloud(system)
    for _ in range(generation):
        cloud = refine(cloud, budget)
    return cloud


def code_images(cloud: PointCloud, anchor: np.ndarray) -> np.ndarray:
    """
    f_code(anchor) for every code of the cloud, in cloud order.

    With the enclosure centre this gives the centre of each cylinder's enclosing ball.
    """
    system = cloud.system
    anchor = np.asarray(anchor, dtype=float)
    images = np.stack([sim(anchor) for sim in system.maps])
    for _ in range(cloud.generation):
        images = np.concatenate([sim(images) for sim in system.maps])
    return images


def cloud_gap(cloud: PointCloud) -> float:
    """Upper bound r_max^(g+1) * R_up on the Hausdorff distance between A_g and E."""
    system = cloud.system
    return system.r_max ** (cloud.generation + 1) * system.geometry.diameter_up


def export_csv(cloud: PointCloud, path) -> None:
    """Writes code, x1..xn, weight rows with 17 significant digits."""
    n = cloud.coords.shape[1]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["code"] + [f"x{k + 1}" for k in range(n)] + ["weight"])
        for i in range(cloud.size):
            writer.writerow(
                [format_code(cloud.codes[i], cloud.system.m)]
                + [format_float(v) for v in cloud.coords[i]]
                + [format_float(cloud.weights[i])]
            )
    log_debug("CLOUD", f"exported {cloud.size} points to '{path}'")

# --- END OF FILE pointcloud.py ---
