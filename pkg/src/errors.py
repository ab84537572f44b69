# --- START OF FILE errors.py ---
"""Exception hierarchy shared by every measure module."""

from typing import Optional


class IfsError(Exception):
    """Base class for errors raised while building or analysing an IFS."""
    pass


class SystemValidationError(IfsError):
    """An IFS definition failed validation (bad ratio, matrix, dimension, JSON)."""
    def __init__(self, message, key_path: Optional[str] = None):
        super().__init__(message)
        self.key_path = key_path

    def __str__(self):
        if self.key_path:
            return f"{super().__str__()} (at {self.key_path})"
        return super().__str__()


class DegenerateSystemError(SystemValidationError):
    """Fewer than two maps: the attractor is a single point and s = 0."""
    pass


class GeometryError(IfsError):
    """The c / R brackets cannot be formed at the requested depth."""
    pass


class BudgetExceededError(IfsError):
    """A point or node budget would be exceeded."""
    def __init__(self, message, limit=None, requested=None, partial_records=None):
        super().__init__(message)
        self.limit = limit
        self.requested = requested
        self.partial_records = list(partial_records or [])

    def __str__(self):
        details = []
        if self.limit is not None:
            details.append(f"limit: {self.limit}")
        if self.requested is not None:
            details.append(f"requested: {self.requested}")
        details_str = " (" + ", ".join(details) + ")" if details else ""
        return f"{super().__str__()}{details_str}"


class SscViolationError(IfsError):
    """The strong separation condition is not certified and no override was given."""
    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class MeasureOracleError(IfsError):
    """The measure oracle could not produce a usable bracket."""
    pass


class GalleryError(IfsError):
    """Unknown gallery entry or invalid gallery parameters."""
    pass

# --- END OF FILE errors.py ---
