# --- START OF FILE utils.py ---

from fractions import Fraction
from typing import Sequence

import constants


def format_float(value, digits=constants.CSV_SIGNIFICANT_DIGITS):
    """Formats a float with a fixed number of significant digits; None becomes ''."""
    if value is None:
        return ""
    return f"{float(value):.{digits}g}"


def format_code(code: Sequence[int], m: int | None = None) -> str:
    """Digit string for a code; symbols are dot-separated once m exceeds 10."""
    if m is not None and m > 10:
        return ".".join(str(int(c)) for c in code)
    return "".join(str(int(c)) for c in code)


def canonical_code(code: Sequence[int]) -> tuple:
    """
    Short notation for a cloud point code.

    The final symbol names a fixed point, so trailing repeats of it do not move the
    point: x_{i..jj} = x_{i..j}. Collapsing them gives a generation-independent name.
    """
    code = tuple(int(c) for c in code)
    if not code:
        return code
    end = len(code)
    while end > 1 and code[end - 2] == code[-1]:
        end -= 1
    return code[:end]


def parse_number(text: str) -> float:
    """Parses '0.25', '1/4' or '2.5e-1' into a float."""
    text = text.strip()
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Invalid number: '{text}'")

# --- END OF FILE utils.py ---
