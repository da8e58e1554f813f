"""
Seeded synthetic subscriber aggregates with a planted country-context signal.

Each country gets a preference position in [0, 1] from the rank of its
weighted, min-max scaled profile features. A plan's utility falls off with the
distance between its position in the price ladder and the country's position;
each row draws its target plan as ``argmax(utility + noise * Gumbel)``, which
samples ``softmax(utility / noise)`` and reduces to the best plan at noise 0.
The ranking is a monotone transform of the weighted score: a higher score never
maps to a cheaper best plan, though the gaps between country scores are not kept.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config.errors import DataValidationError
from ingest.countries import CountryCode
from ingest.indicators import log_scaled_names
from ingest.models import CountryProfile
from synthgen.catalog import PlanCatalog
from synthgen.config import SynthConfig

logger = logging.getLogger(__name__)

SUBSCRIBER_COLUMNS: Tuple[str, ...] = (
    "country",
    "n_accounts",
    "n_plan_changes",
    "left_and_returned",
    "plan_from",
    "price_from",
    "plan_to",
    "price_to",
    "change_year",
    "change_month",
    "n_same_day_downgrades",
)
MODELING_COLUMNS: Tuple[str, ...] = (
    "n_accounts",
    "n_plan_changes",
    "left_and_returned",
    "plan_from",
    "price_from",
    "change_year",
    "change_month",
)
NON_MODELING_COLUMNS: Tuple[str, ...] = ("n_same_day_downgrades",)

GROUND_TRUTH_COLUMNS: Tuple[str, ...] = ("row_index", "plan_label")

MEAN_ACCOUNTS = 4.0
MEAN_EXTRA_PLAN_CHANGES = 1.5
LEFT_AND_RETURNED_RATE = 0.2
MEAN_EXTRA_SAME_DAY = 0.3


@dataclass(frozen=True)
class SubscriberAggregate:
    """One country-level cohort of downgraded accounts sharing a plan change."""

    country: CountryCode
    n_accounts: int
    n_plan_changes: int
    left_and_returned: bool
    plan_from: str
    price_from: float
    plan_to: str
    price_to: float
    change_year: int
    change_month: int
    n_same_day_downgrades: int

    def __post_init__(self) -> None:
        for name in ("n_accounts", "n_plan_changes", "n_same_day_downgrades"):
            if getattr(self, name) < 1:
                raise DataValidationError(f"{self.country}: {name} must be >= 1")
        if self.price_to > self.price_from:
            raise DataValidationError(
                f"{self.country}: price_to {self.price_to} exceeds price_from {self.price_from}"
            )
        if not 1 <= self.change_month <= 12:
            raise DataValidationError(f"{self.country}: change_month {self.change_month} outside 1..12")

    def as_row(self) -> Dict:
        return {name: getattr(self, name) for name in SUBSCRIBER_COLUMNS}


def _scale_column(values: np.ndarray) -> np.ndarray:
    low, high = values.min(), values.max()
    if high == low:
        return np.zeros_like(values)
    return (values - low) / (high - low)


def country_scores(
    profiles: Mapping[str, CountryProfile],
    countries: Sequence[str],
    signal_weights: Mapping[str, float],
) -> Dict[str, float]:
    """Weighted sum of min-max scaled profile features for each country."""
    codes = sorted(countries)
    log_names = set(log_scaled_names())
    total = np.zeros(len(codes))
    for name in sorted(signal_weights):
        column = np.array([profiles[code].feature_vector([name])[0] for code in codes], dtype=float)
        if name in log_names:
            column = np.log1p(column)
        total += float(signal_weights[name]) * _scale_column(column)
    return {code: float(score) for code, score in zip(codes, total)}


def preference_positions(scores: Mapping[str, float]) -> Dict[str, float]:
    """Rank quantile of each score in [0, 1]; ties broken by country code."""
    ordered = sorted(scores, key=lambda code: (scores[code], code))
    if len(ordered) == 1:
        return {ordered[0]: 0.5}
    return {code: rank / (len(ordered) - 1) for rank, code in enumerate(ordered)}


def plan_utilities(position: float, n_plans: int, sharpness: float) -> np.ndarray:
    ladder = np.linspace(0.0, 1.0, n_plans)
    return -sharpness * np.abs(ladder - position)


def _check_inputs(config: SynthConfig, profiles: Mapping[str, CountryProfile], catalog: PlanCatalog) -> None:
    if not config.countries:
        raise DataValidationError("Synthetic config lists no countries")
    no_profile = [code for code in config.countries if code not in profiles]
    no_catalog = [code for code in config.countries if code not in catalog]
    if no_profile or no_catalog:
        raise DataValidationError(
            f"Unknown countries in synthetic config: without profile {no_profile}, "
            f"without catalog entry {no_catalog}"
        )
    sample = profiles[config.countries[0]]
    unknown = [name for name in config.signal_weights if name not in sample.feature_names()]
    if unknown:
        raise DataValidationError(f"Signal weights name features absent from profiles: {unknown}")


def expected_plans(
    config: SynthConfig, profiles: Sequence[CountryProfile], catalog: PlanCatalog
) -> Dict[str, str]:
    """Each country's highest-utility plan, the noise-free target."""
    by_code = {profile.country: profile for profile in profiles}
    _check_inputs(config, by_code, catalog)
    positions = preference_positions(country_scores(by_code, config.countries, config.signal_weights))
    result = {}
    for code in sorted(config.countries):
        utilities = plan_utilities(positions[code], len(catalog.plans_for(code)), config.sharpness)
        result[code] = catalog.labels(code)[int(np.argmax(utilities))]
    return result


def generate(
    config: SynthConfig, profiles: Sequence[CountryProfile], catalog: PlanCatalog
) -> Tuple[List[SubscriberAggregate], Dict[int, str]]:
    """
    Generate ``config.rows`` aggregates over ``config.countries``.

    Args:
        config: Seed, size, countries and signal settings.
        profiles: Country profiles; extra profiles are ignored.
        catalog: Plans per country.

    Returns:
        (aggregates, ground_truth) where ground_truth maps row index to the
        true target plan label.
    """
    by_code = {profile.country: profile for profile in profiles}
    _check_inputs(config, by_code, catalog)

    codes = sorted(config.countries)
    positions = preference_positions(country_scores(by_code, codes, config.signal_weights))
    rows = config.rows
    max_plans = max(len(catalog.plans_for(code)) for code in codes)

    rng = np.random.default_rng(config.seed)
    country_index = rng.permutation(np.arange(rows) % len(codes))
    gumbel = rng.gumbel(size=(rows, max_plans))
    from_draw = rng.random(rows)
    n_accounts = 1 + rng.poisson(MEAN_ACCOUNTS, rows)
    n_plan_changes = 1 + rng.poisson(MEAN_EXTRA_PLAN_CHANGES, rows)
    left_and_returned = rng.random(rows) < LEFT_AND_RETURNED_RATE
    change_month = rng.integers(1, 13, rows)
    n_same_day = 1 + rng.poisson(MEAN_EXTRA_SAME_DAY, rows)

    target = np.zeros(rows, dtype=int)
    plan_from = np.zeros(rows, dtype=int)
    for position, code in enumerate(codes):
        mask = country_index == position
        n_plans = len(catalog.plans_for(code))
        utilities = plan_utilities(positions[code], n_plans, config.sharpness)
        chosen = np.argmax(utilities[None, :] + config.noise * gumbel[mask, :n_plans], axis=1)
        target[mask] = chosen
        # downgrade cohort: start strictly above the target unless it is the top plan
        span = n_plans - 1 - chosen
        start = chosen + 1 + np.floor(from_draw[mask] * span).astype(int)
        plan_from[mask] = np.where(span > 0, start, chosen)

    aggregates: List[SubscriberAggregate] = []
    ground_truth: Dict[int, str] = {}
    for i in range(rows):
        code = codes[country_index[i]]
        plans = catalog.plans_for(code)
        to_plan = plans[target[i]]
        from_plan = plans[plan_from[i]]
        aggregates.append(
            SubscriberAggregate(
                country=CountryCode(code),
                n_accounts=int(n_accounts[i]),
                n_plan_changes=int(n_plan_changes[i]),
                left_and_returned=bool(left_and_returned[i]),
                plan_from=from_plan.label,
                price_from=from_plan.monthly_price,
                plan_to=to_plan.label,
                price_to=to_plan.monthly_price,
                change_year=config.change_year,
                change_month=int(change_month[i]),
                n_same_day_downgrades=int(n_same_day[i]),
            )
        )
        ground_truth[i] = to_plan.label

    logger.info(
        "Generated %d aggregates over %d countries (seed=%d, noise=%g)",
        rows, len(codes), config.seed, config.noise,
    )
    return aggregates, ground_truth


def aggregates_to_frame(aggregates: Sequence[SubscriberAggregate]) -> pd.DataFrame:
    return pd.DataFrame([agg.as_row() for agg in aggregates], columns=list(SUBSCRIBER_COLUMNS))


def write_aggregates_csv(aggregates: Sequence[SubscriberAggregate], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    aggregates_to_frame(aggregates).to_csv(path, index=False, lineterminator="\n")
    return path


def read_aggregates_csv(path: Union[str, Path]) -> List[SubscriberAggregate]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Subscriber aggregate file not found: {path}")
    frame = pd.read_csv(path, dtype={"country": str, "plan_from": str, "plan_to": str}, keep_default_na=False)
    missing = [name for name in SUBSCRIBER_COLUMNS if name not in frame.columns]
    if missing:
        raise DataValidationError(f"{path}: missing columns {missing}")
    aggregates = []
    for record in frame.to_dict(orient="records"):
        flag = record["left_and_returned"]
        if isinstance(flag, str):
            flag = flag.strip().lower() in {"true", "1", "yes"}
        aggregates.append(
            SubscriberAggregate(
                country=CountryCode(record["country"]),
                n_accounts=int(record["n_accounts"]),
                n_plan_changes=int(record["n_plan_changes"]),
                left_and_returned=bool(flag),
                plan_from=record["plan_from"],
                price_from=float(record["price_from"]),
                plan_to=record["plan_to"],
                price_to=float(record["price_to"]),
                change_year=int(record["change_year"]),
                change_month=int(record["change_month"]),
                n_same_day_downgrades=int(record["n_same_day_downgrades"]),
            )
        )
    return aggregates


def write_ground_truth_csv(ground_truth: Mapping[int, str], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        sorted(ground_truth.items()), columns=list(GROUND_TRUTH_COLUMNS)
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_ground_truth_csv(path: Union[str, Path]) -> Dict[int, str]:
    frame = pd.read_csv(path, dtype={"plan_label": str}, keep_default_na=False)
    return {int(i): label for i, label in zip(frame["row_index"], frame["plan_label"])}
