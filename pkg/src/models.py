# --- START OF FILE models.py ---

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

Code = Tuple[int, ...]


class SscStatus(str, Enum):
    """Outcome of the numeric strong-separation test."""
    CERTIFIED = "certified"
    INCONCLUSIVE = "inconclusive"
    VIOLATED = "violated"


@dataclass(frozen=True)
class GeometryBounds:
    # Brackets for R = |E| and c = min_{i != j} dist(f_i E, f_j E)
    diameter_low: float
    diameter_up: float
    gap_low: float
    gap_up: float
    depth_used: int

    def contains_diameter(self, value: float, slack: float = 0.0) -> bool:
        return self.diameter_low - slack <= value <= self.diameter_up + slack

    def contains_gap(self, value: float, slack: float = 0.0) -> bool:
        return self.gap_low - slack <= value <= self.gap_up + slack


@dataclass(frozen=True)
class CodedPoint:
    coords: Tuple[float, ...]
    code: Code           # outermost map first; last symbol names a fixed point
    weight: float        # r_code^s

    @property
    def first_symbol(self) -> int:
        return self.code[0]


@dataclass(frozen=True)
class DensityRecord:
    generation: int
    m_tilde: float
    center: CodedPoint
    witness: CodedPoint
    d_tilde: float
    ball_discrete_measure: float
    certified: bool = False
    certified_upper_bound: Optional[float] = None
    # m_tilde itself bounds C^s(E): set when certified, or when the oracle shows mu(B) >= mu_g(B)
    m_tilde_certified: bool = False
    # Every (center code, witness code) pair within the tie tolerance of m_tilde
    all_minimizers: List[Tuple[Code, Code]] = field(default_factory=list, repr=False)


@dataclass(frozen=True)
class MeasureBracket:
    lower: float
    upper: float
    depth_reached: int
    nodes_visited: int = 0

    @property
    def undecided_mass(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


@dataclass
class ScheduleResult:
    records: List[DensityRecord] = field(default_factory=list)
    stabilized_at: Optional[int] = None   # smallest g0 with unchanged minimizer pairs up to g_max

    @property
    def m_tilde_sequence(self) -> List[float]:
        return [r.m_tilde for r in self.records]

    def best_certified(self) -> Optional[DensityRecord]:
        """Record with the smallest certified upper bound (earliest generation on ties)."""
        bounded = [r for r in self.records if r.certified_upper_bound is not None]
        if not bounded:
            return None
        return min(bounded, key=lambda r: (r.certified_upper_bound, r.generation))

    def best_certified_m_tilde(self) -> Optional[DensityRecord]:
        """Record with the smallest m~ that is itself a certified bound (earliest on ties)."""
        bounded = [r for r in self.records if r.m_tilde_certified]
        if not bounded:
            return None
        return min(bounded, key=lambda r: (r.m_tilde, r.generation))


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    parameters: Tuple[float, ...]
    system: "object"                       # IFSystem; typed loosely to avoid an import cycle
    expected_s: float
    expected_csm: Optional[float] = None
    csm_status: Optional[str] = None       # 'proven' | 'conjectural'
    certified_bound: Optional[float] = None
    expected_table: List[Tuple[int, float]] = field(default_factory=list)
    reference: str = ""


@dataclass
class RunConfig:
    gallery: Optional[str] = None
    system_path: Optional[str] = None
    g_max: int = 6
    tie_tol: float = 1e-12
    bracket_tol: Optional[float] = None    # None -> factor * R_up
    memory_budget: int = 2_000_000
    node_budget: int = 10_000_000
    workers: Union[int, str] = "auto"
    report_path: Optional[str] = None
    csv_path: Optional[str] = None
    svg_path: Optional[str] = None
    certify: bool = False
    ssc_override: bool = False

    def validate(self) -> None:
        """Raises ValueError on an inconsistent configuration."""
        if (self.gallery is None) == (self.system_path is None):
            raise ValueError("Exactly one of --gallery or --system is required.")
        if self.g_max < 0:
            raise ValueError(f"g_max must be >= 0, got {self.g_max}")
        if not self.tie_tol > 0:
            raise ValueError(f"tie tolerance must be > 0, got {self.tie_tol}")
        if self.bracket_tol is not None and not self.bracket_tol > 0:
            raise ValueError(f"bracket tolerance must be > 0, got {self.bracket_tol}")
        if self.memory_budget < 1 or self.node_budget < 1:
            raise ValueError("budgets must be positive")
        if self.workers != "auto" and (not isinstance(self.workers, int) or self.workers < 1):
            raise ValueError(f"workers must be a positive integer or 'auto', got {self.workers!r}")

# --- END OF FILE models.py ---
