"""
Fuse subscriber aggregates with country profiles into the base matrix.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence

import pandas as pd

from config.errors import DataValidationError
from ingest.models import CULTURAL_FIELDS, CountryProfile
from preprocess.matrix import ColumnInfo, ColumnKind, ColumnSource, FeatureMatrix
from synthgen.generator import SubscriberAggregate

logger = logging.getLogger(__name__)

TARGET_COLUMN = "price_to"
DOMAIN_NUMERIC_COLUMNS = ("n_accounts", "n_plan_changes", "price_from")
DOMAIN_CATEGORICAL_COLUMNS = ("left_and_returned", "plan_from", "change_year", "change_month")


def _category_label(name: str, value) -> str:
    if name == "change_month":
        return f"{int(value):02d}"
    if name == "left_and_returned":
        return "true" if value else "false"
    return str(value)


def build_base_matrix(
    aggregates: Sequence[SubscriberAggregate],
    profiles: Sequence[CountryProfile],
    indicator_names: Optional[Sequence[str]] = None,
) -> FeatureMatrix:
    """
    One row per aggregate: domain columns, the country's six cultural indices
    and its indicators, with ``price_to`` as target.

    ``n_same_day_downgrades`` and ``plan_to`` never enter the matrix; the true
    plan label and country are kept as row metadata. Month and year become
    categorical labels for one-hot encoding.
    """
    by_code: Dict[str, CountryProfile] = {}
    for profile in profiles:
        if profile.country in by_code:
            raise DataValidationError(f"Duplicate profile for country {profile.country}")
        by_code[profile.country] = profile
    if not aggregates:
        raise DataValidationError("No subscriber aggregates to build a matrix from")
    if not by_code:
        raise DataValidationError("No country profiles to build a matrix from")

    names = list(indicator_names) if indicator_names is not None else next(iter(by_code.values())).indicator_names
    missing = sorted({agg.country for agg in aggregates} - set(by_code))
    if missing:
        raise DataValidationError(f"Aggregates reference countries without a profile: {missing}")

    context = {code: dict(zip(list(CULTURAL_FIELDS) + names, profile.feature_vector(list(CULTURAL_FIELDS) + names)))
               for code, profile in by_code.items()}

    columns: Dict[str, ColumnInfo] = {}
    for name in DOMAIN_NUMERIC_COLUMNS:
        columns[name] = ColumnInfo(ColumnKind.NUMERIC, ColumnSource.DOMAIN)
    for name in DOMAIN_CATEGORICAL_COLUMNS:
        columns[name] = ColumnInfo(ColumnKind.CATEGORICAL, ColumnSource.DOMAIN)
    for name in CULTURAL_FIELDS:
        columns[name] = ColumnInfo(ColumnKind.NUMERIC, ColumnSource.CULTURE)
    for name in names:
        columns[name] = ColumnInfo(ColumnKind.NUMERIC, ColumnSource.INDICATOR)
    columns[TARGET_COLUMN] = ColumnInfo(ColumnKind.NUMERIC, ColumnSource.TARGET)

    records: List[Dict] = []
    for agg in aggregates:
        record = {name: float(getattr(agg, name)) for name in DOMAIN_NUMERIC_COLUMNS}
        for name in DOMAIN_CATEGORICAL_COLUMNS:
            record[name] = _category_label(name, getattr(agg, name))
        record.update(context[agg.country])
        record[TARGET_COLUMN] = float(agg.price_to)
        records.append(record)

    frame = pd.DataFrame.from_records(records, columns=list(columns))
    meta = pd.DataFrame(
        {"country": [agg.country for agg in aggregates], "plan_label": [agg.plan_to for agg in aggregates]}
    )
    logger.info("Built base matrix: %d rows x %d columns", len(frame), len(columns))
    return FeatureMatrix(frame=frame, columns=columns, target_name=TARGET_COLUMN, row_meta=meta)
