"""
Parse and write long-format socio-economic files (country,indicator,year,value).
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import pandas as pd

from config.errors import DataValidationError, ParseError
from ingest.countries import validate_country_code
from ingest.cultural import MISSING_TOKENS, iter_rows, read_csv_cells
from ingest.indicators import Category
from ingest.models import IndicatorObservation

logger = logging.getLogger(__name__)

SOCIOECONOMIC_HEADER: Tuple[str, ...] = ("country", "indicator", "year", "value")


def parse_socioeconomic_csv(
    path: Union[str, Path], category: Union[Category, str]
) -> List[IndicatorObservation]:
    """
    Parse one category file into observations tagged with ``category``.

    Rows whose value cell holds a missing token are absent observations and are
    skipped; any other non-numeric value is a parse error.
    """
    path = Path(path)
    category = category if isinstance(category, Category) else Category.parse(category)
    if not path.exists():
        raise FileNotFoundError(f"Socio-economic file not found: {path}")

    frame = read_csv_cells(path)
    columns = tuple(frame.columns)
    if columns != SOCIOECONOMIC_HEADER:
        raise ParseError(
            f"header must be {','.join(SOCIOECONOMIC_HEADER)}; got {','.join(columns)}",
            path,
            1,
        )

    observations: List[IndicatorObservation] = []
    skipped = 0
    for line, cells in iter_rows(frame, path):
        raw_value = cells["value"]
        if raw_value in MISSING_TOKENS:
            skipped += 1
            continue
        try:
            value = float(raw_value)
        except ValueError as exc:
            raise ParseError(f"non-numeric value {raw_value!r}", path, line) from exc
        if not math.isfinite(value):
            raise ParseError(f"non-finite value {raw_value!r}", path, line)
        try:
            year = int(cells["year"])
        except ValueError as exc:
            raise ParseError(f"non-integer year {cells['year']!r}", path, line) from exc
        if not cells["indicator"]:
            raise ParseError("empty indicator name", path, line)

        try:
            country = validate_country_code(cells["country"], require_known=True)
            observations.append(
                IndicatorObservation(
                    country=country, category=category, name=cells["indicator"], year=year, value=value
                )
            )
        except DataValidationError as exc:
            raise DataValidationError(f"{path}:{line}: {exc}") from exc

    logger.info(
        "Parsed %d %s observations from %s (%d missing cells skipped)",
        len(observations), category.value, path.name, skipped,
    )
    return observations


def write_socioeconomic_csv(
    observations: Iterable[IndicatorObservation], path: Union[str, Path]
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        [(str(obs.country), obs.name, int(obs.year), repr(float(obs.value))) for obs in observations],
        columns=list(SOCIOECONOMIC_HEADER),
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
