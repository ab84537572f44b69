# --- START OF FILE gallery.py ---
"""
Named example systems with their reference values.

Names are `base` or `base(p1,p2,...)`; parameters accept decimals or fractions, so
`sierpinski(1/3)` and `sym-cantor(0.125,0.2)` both work.
"""

import inspect
import math
import re
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from debug_logging import log_debug, log_warning
from errors import GalleryError
from ifs_core import IFSystem, solve_dimension
from models import GalleryEntry
from utils import parse_number

PROVEN = "proven"
CONJECTURAL = "conjectural"

_NAME_RE = re.compile(r"^\s*([a-z][a-z0-9-]*)\s*(?:\((.*)\))?\s*$")

SQRT3 = math.sqrt(3.0)


def _table(values: Sequence[float], start: int = 0) -> List[Tuple[int, float]]:
    return [(start + i, v) for i, v in enumerate(values)]


# --- Constructors ---

def _cantor_1_3() -> GalleryEntry:
    system = IFSystem.from_parameters([1 / 3, 1 / 3], [[0.0], [2 / 3]])
    s = math.log(2) / math.log(3)
    return GalleryEntry(
        name="cantor-1-3",
        parameters=(),
        system=system,
        expected_s=s,
        expected_csm=4 ** s / 2,
        csm_status=PROVEN,
        expected_table=_table([1.54856, 1.03238] + [1.19902] * 7),
        reference="middle-third Cantor set; C^s = 2^s (1 - 1/3)^s",
    )


def _cantor_lambda(lam: float = 0.25) -> GalleryEntry:
    if not 0.0 < lam < 0.5:
        raise GalleryError(f"cantor-lambda needs 0 < lambda < 1/2 for separated pieces, got {lam}")
    system = IFSystem.from_parameters([lam, lam], [[0.0], [1.0 - lam]])
    s = math.log(2) / -math.log(lam)
    closed_form = 2 ** s * (1 - lam) ** s if lam <= 1 / 3 else None
    return GalleryEntry(
        name=f"cantor-lambda({lam:g})",
        parameters=(lam,),
        system=system,
        expected_s=s,
        expected_csm=closed_form,
        csm_status=PROVEN if closed_form is not None else None,
        reference="central Cantor set K(lambda); C^s = 2^s (1 - lambda)^s for lambda <= 1/3",
    )


def sym_cantor_admissible(lam1: float, lam2: float) -> bool:
    """(1 - 2 lam1 - lam2) / 2 >= max(lam1, lam2): the gaps are no shorter than the pieces."""
    return (1.0 - 2.0 * lam1 - lam2) / 2.0 >= max(lam1, lam2)


def _sym_cantor(lam1: float = 1 / 8, lam2: float = 1 / 5) -> GalleryEntry:
    if lam1 <= 0 or lam2 <= 0 or 2 * lam1 + lam2 >= 1:
        raise GalleryError(f"sym-cantor needs positive ratios with 2*lambda1 + lambda2 < 1, got ({lam1}, {lam2})")
    admissible = sym_cantor_admissible(lam1, lam2)
    if not admissible:
        log_warning("GALLERY", f"sym-cantor({lam1:g},{lam2:g}): gap condition fails; C^s = 1 is not guaranteed")
    system = IFSystem.from_parameters(
        [lam1, lam2, lam1],
        [[0.0], [(1.0 - lam2) / 2.0], [1.0 - lam1]],
    )
    return GalleryEntry(
        name=f"sym-cantor({lam1:g},{lam2:g})",
        parameters=(lam1, lam2),
        system=system,
        expected_s=solve_dimension([lam1, lam2, lam1]),
        expected_csm=1.0 if admissible else None,
        csm_status=PROVEN if admissible else None,
        expected_table=_table([1.0] * 4) if admissible else [],
        reference="symmetric three-piece Cantor set; C^s = 1 under the gap condition",
    )


PLANAR4_DEFAULTS = (1 / 400, 1 / 20, 1 / 400, 1 / 20)


def _planar4(lam1: float = PLANAR4_DEFAULTS[0], lam2: float = PLANAR4_DEFAULTS[1],
             lam3: float = PLANAR4_DEFAULTS[2], lam4: float = PLANAR4_DEFAULTS[3]) -> GalleryEntry:
    lams = (lam1, lam2, lam3, lam4)
    if any(not 0.0 < lam < 0.5 for lam in lams):
        raise GalleryError(f"planar4 ratios must lie in (0, 1/2), got {lams}")
    system = IFSystem.from_parameters(
        list(lams),
        [[0.0, 0.0], [1.0 - lam2, 0.0], [1.0 - lam3, 1.0 - lam3], [0.0, 1.0 - lam4]],
    )
    s = solve_dimension(lams)
    # Diagonal ball through the corner pieces; the separation conditions behind it are
    # only established for the reference parameters
    closed_form = (2.0 * math.sqrt(2.0) * (1.0 - max(lams))) ** s
    is_reference = all(math.isclose(a, b, rel_tol=0, abs_tol=1e-15) for a, b in zip(lams, PLANAR4_DEFAULTS))
    return GalleryEntry(
        name=f"planar4({lam1:g},{lam2:g},{lam3:g},{lam4:g})",
        parameters=lams,
        system=system,
        expected_s=s,
        expected_csm=closed_form,
        csm_status=PROVEN if is_reference else CONJECTURAL,
        expected_table=[(0, 1.4174)] + _table([1.39321] * 5, start=1) if is_reference else [],
        reference="four corner pieces of the unit square; C^s = (2 sqrt2 (1 - lambda_max))^s",
    )


def _sierpinski(r: float = 0.2) -> GalleryEntry:
    if not 0.0 < r < 0.5:
        raise GalleryError(f"sierpinski needs 0 < r < 1/2 (r >= 1/2 makes the pieces touch), got {r}")
    system = IFSystem.from_parameters(
        [r, r, r],
        [[0.0, 0.0], [1.0 - r, 0.0], [(1.0 - r) / 2.0, (1.0 - r) * SQRT3 / 2.0]],
    )
    s = math.log(3) / -math.log(r)
    expected, table = None, []
    if r < 0.25:
        expected = (2.0 * (1.0 - r) * math.sqrt(r * r + r + 1.0)) ** s
    elif math.isclose(r, 1 / 3, abs_tol=1e-15):
        expected = 1.537
    if math.isclose(r, 0.2, abs_tol=1e-15):
        table = _table([1.60504, 1.51231] + [1.48326] * 7)
    return GalleryEntry(
        name=f"sierpinski({r:g})",
        parameters=(r,),
        system=system,
        expected_s=s,
        expected_csm=expected,
        csm_status=CONJECTURAL if expected is not None else None,
        expected_table=table,
        reference="Sierpinski gasket S(r) on the unit triangle",
    )


def _quarter_cantor() -> GalleryEntry:
    system = IFSystem.from_parameters(
        [0.25] * 4,
        [[0.0, 0.0], [0.75, 0.0], [0.0, 0.75], [0.75, 0.75]],
    )
    return GalleryEntry(
        name="quarter-cantor",
        parameters=(),
        system=system,
        expected_s=1.0,
        expected_csm=1.95,
        csm_status=CONJECTURAL,
        certified_bound=1.95542,
        expected_table=_table([2.66667, 1.92296, 1.95814, 1.95542, 1.95306, 1.95388, 1.95417]),
        reference="planar 1/4 Cantor dust C(1/4); C^1 <= 1.95542 from the generation-3 ball",
    )


_CONSTRUCTORS: Dict[str, Tuple[Callable[..., GalleryEntry], str]] = {
    "cantor-1-3": (_cantor_1_3, ""),
    "cantor-lambda": (_cantor_lambda, "lambda=1/4"),
    "sym-cantor": (_sym_cantor, "lambda1=1/8,lambda2=1/5"),
    "planar4": (_planar4, "l1=1/400,l2=1/20,l3=1/400,l4=1/20"),
    "sierpinski": (_sierpinski, "r=1/5"),
    "quarter-cantor": (_quarter_cantor, ""),
}

# Every catalogued example, as get() names
CATALOG_NAMES = (
    "cantor-1-3",
    "cantor-lambda(1/4)",
    "sym-cantor(1/8,1/5)",
    "planar4(1/400,1/20,1/400,1/20)",
    "sierpinski(1/5)",
    "sierpinski(1/3)",
    "quarter-cantor",
)


def parse_name(name: str) -> Tuple[str, Tuple[float, ...]]:
    """Split 'base(p1,p2)' into ('base', (p1, p2))."""
    match = _NAME_RE.match(name or "")
    if not match:
        raise GalleryError(f"Malformed gallery name '{name}'. Available: {', '.join(list_names())}")
    base, arg_text = match.group(1), match.group(2)
    params: Tuple[float, ...] = ()
    if arg_text is not None and arg_text.strip():
        try:
            params = tuple(parse_number(p) for p in arg_text.split(","))
        except ValueError as e:
            raise GalleryError(f"Bad parameters in '{name}': {e}")
    return base, params


@lru_cache(maxsize=None)
def get(name: str) -> GalleryEntry:
    """
    Look up a gallery entry by name.

    Raises:
        GalleryError: unknown name (the message lists the catalog) or bad parameters.
    """
    base, params = parse_name(name)
    if base not in _CONSTRUCTORS:
        raise GalleryError(f"Unknown gallery entry '{base}'. Available: {', '.join(list_names())}")
    constructor, _ = _CONSTRUCTORS[base]
    accepted = len(inspect.signature(constructor).parameters)
    if len(params) > accepted:
        raise GalleryError(f"Wrong number of parameters for '{base}' ({len(params)} given, at most {accepted})")
    entry = constructor(*params)
    log_debug("GALLERY", f"built '{entry.name}': m={entry.system.m}, s={entry.expected_s:.12g}")
    return entry


def catalog() -> List[GalleryEntry]:
    return [get(name) for name in CATALOG_NAMES]


def list_names() -> List[str]:
    """Base names with their default parameters, for --list-gallery."""
    return [f"{base}({defaults})" if defaults else base for base, (_, defaults) in _CONSTRUCTORS.items()]


def describe(entry: GalleryEntry) -> str:
    csm = "unknown" if entry.expected_csm is None else f"{entry.expected_csm:.6g} ({entry.csm_status})"
    return f"{entry.name}: m={entry.system.m}, n={entry.system.ambient_dim}, s={entry.expected_s:.6g}, C^s={csm}"

# --- END OF FILE gallery.py ---
