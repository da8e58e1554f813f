"""
Representative socio-economic indicator set, nine per category.

The list is configurable: runs may pass any subset or their own specs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple


class Category(str, Enum):
    INFRASTRUCTURE = "Infrastructure"
    DEMOGRAPHICS = "Demographics"
    ECONOMIC = "Economic"
    MARKET_OPPORTUNITY = "MarketOpportunity"

    @classmethod
    def parse(cls, raw: str) -> "Category":
        for member in cls:
            if raw.strip().lower() in {member.value.lower(), member.name.lower()}:
                return member
        raise ValueError(
            f"Unknown indicator category {raw!r}; expected one of "
            f"{', '.join(m.value for m in cls)}"
        )


@dataclass(frozen=True)
class IndicatorSpec:
    """Name, category and plausible range of one indicator."""

    name: str
    category: Category
    log_scale: bool
    low: float
    high: float


def _spec(name: str, category: Category, low: float, high: float, log_scale: bool = False) -> IndicatorSpec:
    return IndicatorSpec(name=name, category=category, log_scale=log_scale, low=low, high=high)


_I = Category.INFRASTRUCTURE
_D = Category.DEMOGRAPHICS
_E = Category.ECONOMIC
_M = Category.MARKET_OPPORTUNITY

DEFAULT_INDICATORS: Tuple[IndicatorSpec, ...] = (
    _spec("broadband_subscriptions_per_100", _I, 5.0, 48.0),
    _spec("fixed_broadband_subscriptions", _I, 2.0e5, 1.3e8, log_scale=True),
    _spec("mobile_network_coverage_pct", _I, 70.0, 100.0),
    _spec("mobile_subscriptions_per_100", _I, 60.0, 170.0),
    _spec("internet_users_pct", _I, 35.0, 99.0),
    _spec("secure_servers_per_million", _I, 50.0, 90000.0, log_scale=True),
    _spec("telecom_investment_usd", _I, 1.0e8, 9.0e10, log_scale=True),
    _spec("average_download_mbps", _I, 10.0, 250.0),
    _spec("fiber_share_pct", _I, 1.0, 85.0),
    _spec("population", _D, 3.0e6, 1.4e9, log_scale=True),
    _spec("urban_population_pct", _D, 30.0, 95.0),
    _spec("median_age", _D, 22.0, 49.0),
    _spec("population_growth_pct", _D, -0.8, 2.5),
    _spec("stem_graduates_pct", _D, 12.0, 38.0),
    _spec("tertiary_enrollment_pct", _D, 20.0, 95.0),
    _spec("household_size", _D, 2.0, 4.8),
    _spec("youth_population_pct", _D, 12.0, 45.0),
    _spec("literacy_rate_pct", _D, 70.0, 100.0),
    _spec("gdp_usd", _E, 5.0e10, 2.5e13, log_scale=True),
    _spec("gdp_per_capita", _E, 1500.0, 90000.0, log_scale=True),
    _spec("gdp_growth_pct", _E, -3.0, 8.0),
    _spec("inflation_pct", _E, 0.0, 12.0),
    _spec("fx_rate_per_usd", _E, 0.5, 4000.0, log_scale=True),
    _spec("communication_spending_usd", _E, 5.0e8, 6.0e11, log_scale=True),
    _spec("household_consumption_per_capita", _E, 900.0, 50000.0, log_scale=True),
    _spec("unemployment_pct", _E, 2.0, 18.0),
    _spec("gini_index", _E, 24.0, 55.0),
    _spec("streaming_tv_population_share", _M, 0.05, 0.85),
    _spec("avg_screen_hours_per_day", _M, 2.0, 7.5),
    _spec("global_brand_value_usd", _M, 1.0e9, 4.0e12, log_scale=True),
    _spec("national_films_produced", _M, 10.0, 2000.0, log_scale=True),
    _spec("entertainment_spending_usd", _M, 1.0e8, 3.0e11, log_scale=True),
    _spec("svod_subscriptions_per_100", _M, 1.0, 90.0),
    _spec("cinema_admissions_per_capita", _M, 0.1, 4.5),
    _spec("pay_tv_penetration_pct", _M, 5.0, 95.0),
    _spec("online_ad_spend_usd", _M, 5.0e7, 3.0e11, log_scale=True),
)


def indicator_names(specs: Tuple[IndicatorSpec, ...] = DEFAULT_INDICATORS) -> List[str]:
    return [spec.name for spec in specs]


def log_scaled_names(specs: Tuple[IndicatorSpec, ...] = DEFAULT_INDICATORS) -> List[str]:
    """Heavy-tailed indicators that receive log1p before min-max scaling."""
    return [spec.name for spec in specs if spec.log_scale]


def by_category(specs: Tuple[IndicatorSpec, ...] = DEFAULT_INDICATORS) -> Dict[Category, List[IndicatorSpec]]:
    grouped: Dict[Category, List[IndicatorSpec]] = {category: [] for category in Category}
    for spec in specs:
        grouped[spec.category].append(spec)
    return grouped
