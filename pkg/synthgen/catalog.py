"""
Per-country plan catalogs: ordered (label, monthly price) lists.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from config.errors import DataValidationError

CATALOG_VERSION = 1

DEFAULT_PLAN_LABELS: Tuple[str, ...] = ("Basic", "Standard", "Premium")
DEFAULT_PLAN_PRICES: Tuple[float, ...] = (8.99, 13.99, 17.99)


@dataclass(frozen=True)
class Plan:
    label: str
    monthly_price: float


@dataclass(frozen=True)
class PlanCatalog:
    """
    Plans per country, cheapest first.

    Every country needs at least two plans with unique labels and strictly
    increasing prices.
    """

    plans: Dict[str, Tuple[Plan, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized: Dict[str, Tuple[Plan, ...]] = {}
        for country in sorted(self.plans):
            plans = tuple(self.plans[country])
            if len(plans) < 2:
                raise DataValidationError(f"Catalog for {country} needs at least 2 plans, got {len(plans)}")
            labels = [plan.label for plan in plans]
            if len(set(labels)) != len(labels):
                raise DataValidationError(f"Catalog for {country} repeats a plan label: {labels}")
            prices = [plan.monthly_price for plan in plans]
            if not all(math.isfinite(p) for p in prices):
                raise DataValidationError(f"Catalog for {country} has a non-finite price")
            if any(b <= a for a, b in zip(prices, prices[1:])):
                raise DataValidationError(f"Catalog prices for {country} must strictly increase: {prices}")
            normalized[country] = plans
        object.__setattr__(self, "plans", normalized)

    def countries(self) -> List[str]:
        return list(self.plans)

    def __contains__(self, country: object) -> bool:
        return country in self.plans

    def plans_for(self, country: str) -> Tuple[Plan, ...]:
        try:
            return self.plans[country]
        except KeyError as exc:
            raise DataValidationError(f"No plan catalog entry for country {country}") from exc

    def labels(self, country: str) -> List[str]:
        return [plan.label for plan in self.plans_for(country)]

    def prices(self, country: str) -> np.ndarray:
        return np.array([plan.monthly_price for plan in self.plans_for(country)], dtype=float)

    def price_of(self, country: str, label: str) -> float:
        for plan in self.plans_for(country):
            if plan.label == label:
                return plan.monthly_price
        raise DataValidationError(f"Plan {label!r} is not in the {country} catalog")

    def all_labels(self) -> List[str]:
        """Union of plan labels over countries, sorted."""
        return sorted({plan.label for plans in self.plans.values() for plan in plans})

    def to_dict(self) -> Dict:
        return {
            "version": CATALOG_VERSION,
            "countries": {
                country: [{"label": p.label, "monthly_price": p.monthly_price} for p in plans]
                for country, plans in self.plans.items()
            },
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "PlanCatalog":
        version = payload.get("version", CATALOG_VERSION)
        if version != CATALOG_VERSION:
            raise DataValidationError(f"Unsupported catalog version {version}")
        return cls(
            {
                country: tuple(Plan(str(p["label"]), float(p["monthly_price"])) for p in plans)
                for country, plans in payload["countries"].items()
            }
        )


def default_catalog(
    countries: Iterable[str],
    labels: Sequence[str] = DEFAULT_PLAN_LABELS,
    base_prices: Sequence[float] = DEFAULT_PLAN_PRICES,
    price_levels: Optional[Mapping[str, float]] = None,
) -> PlanCatalog:
    """
    Build the same three-tier catalog for every country.

    Args:
        countries: Country codes to cover.
        labels: Plan labels, cheapest first.
        base_prices: Monthly prices matching ``labels``.
        price_levels: Optional per-country multiplier on ``base_prices``.
    """
    if len(labels) != len(base_prices):
        raise DataValidationError("labels and base_prices must have the same length")
    price_levels = price_levels or {}
    plans = {}
    for country in countries:
        level = float(price_levels.get(country, 1.0))
        plans[country] = tuple(
            Plan(label, round(price * level, 2)) for label, price in zip(labels, base_prices)
        )
    return PlanCatalog(plans)


def save_catalog(catalog: PlanCatalog, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(catalog.to_dict(), f, indent=2)
        f.write("\n")
    return path


def load_catalog(path: Union[str, Path]) -> PlanCatalog:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Plan catalog not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        return PlanCatalog.from_dict(json.load(f))
