# --- START OF FILE constants.py ---

"""
Central location for tolerances and defaults used across the measure modules.
"""

# --- Numerical tolerances ---
TIE_TOL = 1e-12                 # Two distances are equal when |a - b| <= TIE_TOL * max(1, a)
ORTHOGONALITY_TOL = 1e-12       # Max per-entry defect of Q^T Q - I accepted for a similitude
DIMENSION_RESIDUAL_TOL = 1e-12  # |sum r_i^s - 1| required from the dimension solver
DIMENSION_MAX_ITERATIONS = 400  # Bisection steps before giving up on further narrowing
MINIMIZER_REL_TOL = 1e-12       # Pairs within this relative distance of m~ are minimizers

# --- Default Settings ---
# Fallback values used when the config file doesn't have the setting or value is invalid

DEFAULT_G_MAX = 6
DEFAULT_BRACKET_TOL_FACTOR = 1e-6    # bracket tol = factor * R_up
DEFAULT_CLOUD_BUDGET = 2_000_000     # Max points held by one cloud
DEFAULT_NODE_BUDGET = 10_000_000     # Max cylinder visits per oracle call
DEFAULT_WORKERS = "auto"

# --- Geometry estimation ---
DEFAULT_GEOMETRY_MAX_DEPTH = 8       # Deepest cloud used for the c / R brackets
GEOMETRY_POINT_CAP = 8192            # ...unless that cloud would exceed this many points

# --- Scan kernel ---
SCAN_CHUNK_CELLS = 1 << 21           # Distance-matrix entries per chunk of centers
SCAN_MIN_CHUNK = 1

# --- Coincidence detection ---
COINCIDENCE_DECIMALS = 11            # Coordinates rounded to this many decimals when looking for duplicates

# --- Output formatting ---
CSV_SIGNIFICANT_DIGITS = 17
REPORT_SIGNIFICANT_DIGITS = 6
CSV_COLUMNS = [
    "generation", "m_tilde", "d_tilde", "center_code", "witness_code",
    "ball_measure", "certified", "upper_bound",
]

# --- Exit codes ---
EXIT_OK = 0
EXIT_ABORTED = 1      # SSC failure, budget exhaustion, I/O failure
EXIT_BAD_INPUT = 2    # Malformed system file, unknown gallery entry, bad flags

# --- SVG output ---
SVG_CANVAS_PX = 800
SVG_MAX_DOT_PX = 6.0

# --- END OF FILE constants.py ---
