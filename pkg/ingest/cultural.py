"""
Parse and write the cultural-index CSV (country,pdi,idv,mas,uai,ltowvs,ivr).
"""

from __future__ import annotations

import logging
import math
import re
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Tuple, Union

import pandas as pd

from config.errors import DataValidationError, ParseError
from ingest.countries import CountryCode, validate_country_code
from ingest.models import CULTURAL_FIELDS, CULTURAL_MAX, CULTURAL_MIN, CulturalIndices

logger = logging.getLogger(__name__)

MISSING_TOKENS = frozenset({"", "NA", "#NULL!"})
CULTURAL_HEADER: Tuple[str, ...] = ("country",) + CULTURAL_FIELDS

CulturalEntry = Tuple[CountryCode, CulturalIndices]

_PANDAS_LINE = re.compile(r"line (\d+)")


def read_csv_cells(path: Path) -> pd.DataFrame:
    """
    Every cell as a raw string, header names lower-cased and stripped.

    Blank lines are kept as all-NaN rows so row ``i`` sits on file line ``i + 2``;
    a short row shows up as NaN in its missing trailing cells.
    """
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            index_col=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as exc:
        raise ParseError("empty file, expected a header row", path, 1) from exc
    except pd.errors.ParserError as exc:
        match = _PANDAS_LINE.search(str(exc))
        raise ParseError(f"malformed row: {exc}", path, int(match.group(1)) if match else None) from exc
    frame.columns = [str(name).strip().lower() for name in frame.columns]
    return frame


def iter_rows(frame: pd.DataFrame, path: Path) -> Iterator[Tuple[int, dict]]:
    """(file line, stripped cells) per non-blank row; short rows are parse errors."""
    width = len(frame.columns)
    for index, row in enumerate(frame.itertuples(index=False, name=None)):
        line = index + 2
        present = [cell for cell in row if isinstance(cell, str)]
        if not present:
            continue
        if len(present) != width:
            raise ParseError(f"expected {width} columns, found {len(present)}", path, line)
        yield line, {name: cell.strip() for name, cell in zip(frame.columns, row)}


def parse_score(raw: str, path: Union[str, Path], line: int, column: str) -> Optional[float]:
    """Parse one score cell; missing tokens become None."""
    token = raw.strip()
    if token in MISSING_TOKENS:
        return None
    try:
        value = float(token)
    except ValueError as exc:
        raise ParseError(f"column {column}: non-numeric value {token!r}", path, line) from exc
    if not math.isfinite(value):
        raise ParseError(f"column {column}: non-finite value {token!r}", path, line)
    return value


def parse_cultural_csv(path: Union[str, Path]) -> List[CulturalEntry]:
    """
    Parse a cultural-index file.

    Args:
        path: UTF-8 CSV whose header names ``country`` and the six indices
            (any order, case-insensitive).

    Returns:
        One (country, indices) entry per data row, in file order.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Cultural index file not found: {path}")

    frame = read_csv_cells(path)
    columns = list(frame.columns)
    if sorted(columns) != sorted(CULTURAL_HEADER):
        raise ParseError(
            f"header must name {', '.join(CULTURAL_HEADER)}; got {', '.join(columns)}",
            path,
            1,
        )

    entries: List[CulturalEntry] = []
    for line, cells in iter_rows(frame, path):
        try:
            country = validate_country_code(cells["country"])
        except DataValidationError as exc:
            raise ParseError(str(exc), path, line) from exc

        scores = {}
        for name in CULTURAL_FIELDS:
            value = parse_score(cells[name], path, line, name)
            if value is not None and not CULTURAL_MIN <= value <= CULTURAL_MAX:
                raise DataValidationError(
                    f"{path}:{line}: {country} column {name} = {value:g} "
                    f"outside [{CULTURAL_MIN:g}, {CULTURAL_MAX:g}]"
                )
            scores[name] = value
        entries.append((country, CulturalIndices(**scores)))

    incomplete = [code for code, indices in entries if not indices.is_complete()]
    logger.info(
        "Parsed %d cultural rows from %s (%d with missing indices)",
        len(entries), path.name, len(incomplete),
    )
    return entries


def _format_score(value: Optional[float]) -> str:
    return "NA" if value is None else repr(float(value))


def write_cultural_csv(entries: Iterable[CulturalEntry], path: Union[str, Path]) -> Path:
    """Write entries in the canonical column order; missing scores become ``NA``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        [[str(country)] + [_format_score(getattr(indices, name)) for name in CULTURAL_FIELDS] for country, indices in entries],
        columns=list(CULTURAL_HEADER),
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
