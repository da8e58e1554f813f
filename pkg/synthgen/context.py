"""
Synthetic socio-economic context: multi-year indicator histories per country,
written as the four long-format category files the ingest stage reads.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from ingest.countries import CountryCode, validate_country_code
from ingest.indicators import DEFAULT_INDICATORS, Category, IndicatorSpec
from ingest.models import IndicatorObservation
from ingest.socioeconomic import write_socioeconomic_csv

logger = logging.getLogger(__name__)

CATEGORY_FILES: Dict[Category, str] = {
    Category.INFRASTRUCTURE: "infrastructure.csv",
    Category.DEMOGRAPHICS: "demographics.csv",
    Category.ECONOMIC: "economic.csv",
    Category.MARKET_OPPORTUNITY: "market_opportunity.csv",
}

DEFAULT_YEARS: Tuple[int, ...] = (2017, 2018, 2019, 2020, 2021)
YEARLY_DRIFT = 0.02


def _base_value(spec: IndicatorSpec, rng: np.random.Generator) -> float:
    if spec.log_scale:
        return float(np.exp(rng.uniform(np.log(spec.low), np.log(spec.high))))
    return float(rng.uniform(spec.low, spec.high))


def generate_context(
    countries: Iterable[str],
    seed: int,
    specs: Sequence[IndicatorSpec] = DEFAULT_INDICATORS,
    years: Sequence[int] = DEFAULT_YEARS,
    stale_fraction: float = 0.05,
) -> Dict[Category, List[IndicatorObservation]]:
    """
    Draw indicator histories for ``countries``.

    Values start uniform (log-uniform for heavy-tailed indicators) inside each
    indicator's plausible range and drift a little per year. A ``stale_fraction``
    of series lack their latest year, so carry-forward has work to do.

    Returns:
        Observations grouped by category, sorted by country, indicator and year.
    """
    codes = sorted(validate_country_code(code) for code in countries)
    years = sorted(years)
    rng = np.random.default_rng(seed)
    grouped: Dict[Category, List[IndicatorObservation]] = {category: [] for category in Category}
    stale = 0

    for code in codes:
        for spec in specs:
            value = _base_value(spec, rng)
            drift = rng.normal(0.0, YEARLY_DRIFT, len(years))
            drop_latest = len(years) > 1 and rng.random() < stale_fraction
            stale += int(drop_latest)
            for i, year in enumerate(years):
                if spec.low >= 0:
                    value = max(value * (1.0 + drift[i]), 0.0)
                else:
                    value = value + drift[i] * (spec.high - spec.low)
                if drop_latest and year == years[-1]:
                    continue
                grouped[spec.category].append(
                    IndicatorObservation(
                        country=CountryCode(code),
                        category=spec.category,
                        name=spec.name,
                        year=year,
                        value=float(value),
                    )
                )

    logger.info(
        "Generated context for %d countries, %d indicators, %d stale series",
        len(codes), len(specs), stale,
    )
    return grouped


def write_context(
    grouped: Dict[Category, List[IndicatorObservation]], directory: Union[str, Path]
) -> Dict[Category, Path]:
    """Write one long-format CSV per category into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return {
        category: write_socioeconomic_csv(grouped.get(category, []), directory / filename)
        for category, filename in CATEGORY_FILES.items()
    }
