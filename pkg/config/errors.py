"""
Error types raised across the pipeline.

Each class carries the CLI exit code it maps to.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Union


class PriceContextError(Exception):
    """Base class for every error the toolkit raises on purpose."""

    exit_code: int = 2


class UsageError(PriceContextError):
    exit_code = 1


class DataValidationError(PriceContextError, ValueError):
    """Input data violates a documented contract."""


class ParseError(DataValidationError):
    """A file could not be parsed; carries the path and 1-based line number."""

    def __init__(
        self,
        message: str,
        path: Optional[Union[str, Path]] = None,
        line: Optional[int] = None,
    ):
        self.path = str(path) if path is not None else None
        self.line = line
        location = ""
        if self.path:
            location = f"{self.path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")


class NoCompleteCountriesError(DataValidationError):
    """The inner join left no country with a complete record."""

    def __init__(self, missing: Dict[str, List[str]]):
        self.missing = {code: list(fields) for code, fields in sorted(missing.items())}
        details = "; ".join(
            f"{code}: {', '.join(fields)}" for code, fields in self.missing.items()
        )
        super().__init__(f"No complete countries after join. Missing fields per country: {details}")


class MissingArtifactError(PriceContextError, FileNotFoundError):
    """An upstream stage has not produced the artifact a later stage needs."""

    def __init__(self, stage: str, path: Union[str, Path]):
        self.stage = stage
        self.path = str(path)
        super().__init__(f"Missing artifact {self.path}. Run the '{stage}' stage first.")


class DivergenceError(PriceContextError, ArithmeticError):
    """Training produced a non-finite loss or parameter."""

    exit_code = 3

    def __init__(self, message: str, epoch: Optional[int] = None):
        self.epoch = epoch
        if epoch is not None:
            message = f"{message} (epoch {epoch})"
        super().__init__(message)
