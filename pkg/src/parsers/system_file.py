# --- START OF FILE parsers/system_file.py ---
"""
Reader for JSON system definitions.

Schema:
    {
        "dimension": n,
        "maps": [
            {"ratio": r, "translation": [b1, ..., bn], "orthogonal": [[...], ...]},  # orthogonal optional
            ...
        ]
    }
Every validation error names the offending key path, e.g. maps[0].ratio.
"""

import json
import numbers
from typing import Any, Dict

from debug_logging import log_debug
from errors import SystemValidationError
from ifs_core import IFSystem, Similitude


class SystemFileParser:
    """Turns a system-definition document into a validated IFSystem."""

    @classmethod
    def parse_file(cls, path) -> IFSystem:
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = f.read()
        except UnicodeDecodeError as e:
            raise SystemValidationError(f"'{path}' is not UTF-8 text: {e}")
        return cls.parse_text(raw, source=str(path))

    @classmethod
    def parse_text(cls, raw: str, source: str = "<text>") -> IFSystem:
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as e:
            raise SystemValidationError(f"malformed JSON in {source}: {e.msg} (line {e.lineno}, column {e.colno})")
        system = cls.parse_dict(data)
        log_debug("IFS", f"parsed {source}: {system!r}")
        return system

    @staticmethod
    def _is_number(value: Any) -> bool:
        return isinstance(value, numbers.Real) and not isinstance(value, bool)

    @classmethod
    def parse_dict(cls, data: Dict[str, Any]) -> IFSystem:
        """
        Validate a decoded document.

        Args:
            data: The decoded JSON object.

        Returns:
            The IFSystem it describes.

        Raises:
            SystemValidationError: with key_path set to the first offending key.
        """
        if not isinstance(data, dict):
            raise SystemValidationError("top level must be a JSON object", key_path="$")

        dimension = data.get("dimension")
        if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
            raise SystemValidationError(f"dimension must be a positive integer, got {dimension!r}", key_path="dimension")

        maps = data.get("maps")
        if not isinstance(maps, list):
            raise SystemValidationError("maps must be an array", key_path="maps")

        sims = [cls._parse_map(entry, dimension, f"maps[{i}]") for i, entry in enumerate(maps)]
        return IFSystem(sims)

    @classmethod
    def _parse_map(cls, entry: Any, dimension: int, path: str) -> Similitude:
        if not isinstance(entry, dict):
            raise SystemValidationError("each map must be an object", key_path=path)

        ratio = entry.get("ratio")
        if not cls._is_number(ratio):
            raise SystemValidationError(f"ratio must be a number, got {ratio!r}", key_path=f"{path}.ratio")

        translation = entry.get("translation")
        if not isinstance(translation, list) or not all(cls._is_number(v) for v in translation):
            raise SystemValidationError("translation must be an array of numbers", key_path=f"{path}.translation")
        if len(translation) != dimension:
            raise SystemValidationError(
                f"translation has {len(translation)} entries, dimension is {dimension}", key_path=f"{path}.translation")

        orthogonal = entry.get("orthogonal")
        if orthogonal is not None:
            rows_ok = isinstance(orthogonal, list) and len(orthogonal) == dimension and all(
                isinstance(row, list) and len(row) == dimension and all(cls._is_number(v) for v in row)
                for row in orthogonal)
            if not rows_ok:
                raise SystemValidationError(
                    f"orthogonal must be a {dimension}x{dimension} array of numbers", key_path=f"{path}.orthogonal")

        try:
            return Similitude(ratio, translation, orthogonal)
        except SystemValidationError as e:
            raise SystemValidationError(e.args[0], key_path=f"{path}.{e.key_path}") from e


def parse_system_file(path) -> IFSystem:
    """Read and validate a JSON system file."""
    return SystemFileParser.parse_file(path)

# --- END OF FILE parsers/system_file.py ---
