"""
Year filtering, imputation and the inner join into country profiles.

Precedence used by ``build_profiles``: countries with incomplete culture are
removed first, then carry-forward (which needs the multi-year history), then the
most-recent-year filter, then mean imputation inside the join.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.errors import DataValidationError, NoCompleteCountriesError
from ingest.countries import CountryCode
from ingest.cultural import CulturalEntry
from ingest.models import (
    CULTURAL_FIELDS,
    CountryProfile,
    CulturalIndices,
    IndicatorObservation,
    Provenance,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_STALENESS = 3


class ImputationPolicy(str, Enum):
    DROP = "drop"
    CARRY_FORWARD = "carry-forward"
    MEAN = "mean"


def filter_most_recent(observations: Iterable[IndicatorObservation]) -> List[IndicatorObservation]:
    """
    Keep, per (country, indicator), only the observation with the latest year.

    Year ties keep the last-parsed observation and log a warning. The result is
    sorted by (country, indicator).
    """
    latest: Dict[Tuple[str, str], IndicatorObservation] = {}
    for obs in observations:
        key = (obs.country, obs.name)
        current = latest.get(key)
        if current is None or obs.year > current.year:
            latest[key] = obs
        elif obs.year == current.year:
            logger.warning(
                "Duplicate %s/%s observations for %d; keeping the last parsed value %r",
                obs.country, obs.name, obs.year, obs.value,
            )
            latest[key] = obs
    return [latest[key] for key in sorted(latest)]


def _series(observations: Iterable[IndicatorObservation]) -> Dict[Tuple[str, str], List[IndicatorObservation]]:
    grouped: Dict[Tuple[str, str], List[IndicatorObservation]] = defaultdict(list)
    for obs in observations:
        grouped[(obs.country, obs.name)].append(obs)
    return grouped


def _latest_year_per_indicator(observations: Iterable[IndicatorObservation]) -> Dict[str, int]:
    latest: Dict[str, int] = {}
    for obs in observations:
        latest[obs.name] = max(obs.year, latest.get(obs.name, obs.year))
    return latest


def impute(
    observations: Sequence[IndicatorObservation],
    policy: Union[ImputationPolicy, str],
    countries: Optional[Iterable[str]] = None,
    indicators: Optional[Iterable[str]] = None,
    max_staleness: int = DEFAULT_MAX_STALENESS,
) -> List[IndicatorObservation]:
    """
    Apply one imputation policy.

    Args:
        observations: Observations, with multi-year history for carry-forward.
        policy: ``drop`` removes series whose latest year lags the indicator's
            latest year; ``carry-forward`` fills that latest year from the most
            recent earlier year (within ``max_staleness`` years, older series
            are dropped as stale); ``mean`` fills countries lacking an
            indicator with the cross-country mean of the most recent values.
        countries: Countries to fill under ``mean`` (default: all present).
        indicators: Indicators to fill under ``mean`` (default: all present).
        max_staleness: Carry-forward bound in years.

    Returns:
        A new observation list; inputs are not modified.
    """
    policy = ImputationPolicy(policy)
    observations = list(observations)
    latest_year = _latest_year_per_indicator(observations)

    if policy in (ImputationPolicy.DROP, ImputationPolicy.CARRY_FORWARD):
        result: List[IndicatorObservation] = []
        for (country, name), series in _series(observations).items():
            newest = max(obs.year for obs in series)
            target_year = latest_year[name]
            if newest == target_year:
                result.extend(series)
                continue
            if policy is ImputationPolicy.CARRY_FORWARD and target_year - newest <= max_staleness:
                source = [obs for obs in series if obs.year == newest][-1]
                result.extend(series)
                result.append(
                    replace(source, year=target_year, provenance=Provenance.CARRIED_FORWARD)
                )
                logger.debug("Carried %s/%s forward from %d to %d", country, name, newest, target_year)
            else:
                logger.info(
                    "Dropping stale %s/%s (latest %d, indicator latest %d)",
                    country, name, newest, target_year,
                )
        return result

    recent = filter_most_recent(observations)
    target_countries = sorted(set(countries) if countries is not None else {o.country for o in recent})
    target_indicators = list(indicators) if indicators is not None else sorted(latest_year)

    by_indicator: Dict[str, Dict[str, IndicatorObservation]] = defaultdict(dict)
    for obs in recent:
        by_indicator[obs.name][obs.country] = obs

    filled = list(observations)
    for name in target_indicators:
        present = by_indicator.get(name, {})
        values = [present[code].value for code in sorted(present) if code in target_countries]
        if not values:
            values = [obs.value for obs in present.values()]
        if not values:
            raise DataValidationError(f"Cannot mean-impute indicator {name!r}: no observed values")
        mean_value = float(np.mean(values))
        sample = next(iter(present.values()))
        for code in target_countries:
            if code in present:
                continue
            filled.append(
                IndicatorObservation(
                    country=CountryCode(code),
                    category=sample.category,
                    name=name,
                    year=latest_year[name],
                    value=mean_value,
                    provenance=Provenance.MEAN_IMPUTED,
                )
            )
            logger.info("Mean-imputed %s/%s = %r", code, name, mean_value)
    return filled


def _check_unique(cultural: Sequence[CulturalEntry]) -> Dict[str, CulturalIndices]:
    table: Dict[str, CulturalIndices] = {}
    for code, indices in cultural:
        if code in table:
            raise DataValidationError(f"Duplicate cultural row for country {code}")
        table[code] = indices
    return table


def _join(
    cultural: Sequence[CulturalEntry],
    observations: Sequence[IndicatorObservation],
    required_indicators: Sequence[str],
    mean_impute: bool,
) -> Tuple[List[CountryProfile], Dict[str, List[str]]]:
    table = _check_unique(cultural)
    complete = sorted(code for code, indices in table.items() if indices.is_complete())
    missing: Dict[str, List[str]] = {}

    for code, indices in table.items():
        if not indices.is_complete():
            missing[code] = indices.missing_fields()
    for code in sorted({obs.country for obs in observations} - set(table)):
        missing[code] = list(CULTURAL_FIELDS)

    usable = [obs for obs in observations if obs.country in set(complete)]
    if mean_impute and complete:
        usable = impute(usable, ImputationPolicy.MEAN, countries=complete, indicators=required_indicators)
    recent = filter_most_recent(usable)

    values: Dict[str, Dict[str, IndicatorObservation]] = defaultdict(dict)
    for obs in recent:
        values[obs.country][obs.name] = obs

    profiles: List[CountryProfile] = []
    for code in complete:
        have = values.get(code, {})
        lacking = [name for name in required_indicators if name not in have]
        if lacking:
            missing[code] = lacking
            continue
        profiles.append(
            CountryProfile(
                country=CountryCode(code),
                culture=table[code],
                indicators={name: have[name].value for name in required_indicators},
                provenance={name: have[name].provenance for name in required_indicators},
            )
        )
    return profiles, missing


def join_profiles(
    cultural: Sequence[CulturalEntry],
    observations: Sequence[IndicatorObservation],
    required_indicators: Sequence[str],
    mean_impute: bool = False,
) -> List[CountryProfile]:
    """
    Inner-join cultural indices with year-filtered indicator observations.

    Countries lacking any cultural index are dropped, never imputed. With
    ``mean_impute`` a country missing an indicator is filled from the
    cross-country mean and flagged ``mean-imputed``.

    Returns:
        Profiles sorted by country code, all with ``required_indicators`` in order.
    """
    profiles, missing = _join(cultural, observations, list(required_indicators), mean_impute)
    if not profiles:
        raise NoCompleteCountriesError(missing)
    for code, fields in sorted(missing.items()):
        logger.info("Excluded %s from join (missing %s)", code, ", ".join(fields))
    return profiles


@dataclass(frozen=True)
class ProfileBuildResult:
    profiles: List[CountryProfile]
    excluded: Dict[str, List[str]]


def build_profiles(
    cultural: Sequence[CulturalEntry],
    observations: Sequence[IndicatorObservation],
    required_indicators: Sequence[str],
    policies: Sequence[Union[ImputationPolicy, str]] = (ImputationPolicy.CARRY_FORWARD,),
    max_staleness: int = DEFAULT_MAX_STALENESS,
) -> ProfileBuildResult:
    """Run the full ingest chain from parsed inputs to joined profiles."""
    policies = [ImputationPolicy(p) for p in policies]
    complete = {code for code, indices in cultural if indices.is_complete()}
    history = [obs for obs in observations if obs.country in complete]

    for policy in policies:
        if policy is not ImputationPolicy.MEAN:
            history = impute(history, policy, max_staleness=max_staleness)
    recent = filter_most_recent(history)

    profiles, missing = _join(
        cultural, recent, list(required_indicators), ImputationPolicy.MEAN in policies
    )
    for code in sorted({obs.country for obs in observations} - {code for code, _ in cultural}):
        missing.setdefault(code, list(CULTURAL_FIELDS))
    if not profiles:
        raise NoCompleteCountriesError(missing)
    logger.info("Joined %d complete country profiles (%d excluded)", len(profiles), len(missing))
    return ProfileBuildResult(profiles=profiles, excluded=dict(sorted(missing.items())))


def save_profiles(profiles: Sequence[CountryProfile], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump([profile.to_json_dict() for profile in profiles], f, indent=2, ensure_ascii=False)
        f.write("\n")
    return path


def load_profiles(path: Union[str, Path]) -> List[CountryProfile]:
    path = Path(path)
    with path.open("r", encoding="utf-8") as f:
        payload = json.load(f)
    return [CountryProfile.from_json_dict(entry) for entry in payload]
