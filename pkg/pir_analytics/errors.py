"""
Error types for PIR Analytics
Every failure the library reports is a PIRError subclass
"""

from typing import Iterable, Optional, Sequence, Tuple


class PIRError(ValueError):
    """Base class for all library errors"""


class InvalidValueError(PIRError):
    def __init__(self, value: object = None):
        detail = f": {value!r}" if value is not None else ""
        super().__init__(f"invalid value{detail}")


class InvertedBoundsError(PIRError):
    def __init__(self, lower: float, upper: float):
        super().__init__(f"inverted bounds: min {lower} > max {upper}")
        self.lower = lower
        self.upper = upper


class NoDataError(PIRError):
    def __init__(self, message: str = "no data"):
        super().__init__(message)


class IncompleteContextError(PIRError):
    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(missing)
        super().__init__(f"incomplete context: missing bounds for {', '.join(self.missing)}")


class SchemaError(PIRError):
    def __init__(self, missing: Sequence[str]):
        self.missing = list(missing)
        super().__init__(f"schema error: missing required column(s) {', '.join(self.missing)}")


class RowError(PIRError):
    def __init__(self, row: int, message: str):
        self.row = row
        self.detail = message
        super().__init__(f"row {row}: {message}")


class DatasetError(PIRError):
    """Dataset level problem (duplicates, empty file)"""


class UnknownExclusionError(PIRError):
    def __init__(self, entries: Sequence[Tuple[str, str, str]]):
        self.entries = list(entries)
        listed = "; ".join(f"{p} {s} {ph}" for p, s, ph in self.entries)
        super().__init__(f"exclusion entries not found in dataset: {listed}")


class ConfigError(PIRError):
    def __init__(self, message: str, option: Optional[str] = None):
        self.option = option
        super().__init__(f"invalid config ({option}): {message}" if option else f"invalid config: {message}")
