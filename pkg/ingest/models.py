"""
Country-level domain types produced by ingestion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from config.errors import DataValidationError
from ingest.countries import CountryCode
from ingest.indicators import Category

CULTURAL_FIELDS: Tuple[str, ...] = ("pdi", "idv", "mas", "uai", "ltowvs", "ivr")
CULTURAL_MIN = 0.0
CULTURAL_MAX = 120.0

YEAR_MIN = 1990
YEAR_MAX = 2100


class Provenance(str, Enum):
    OBSERVED = "observed"
    CARRIED_FORWARD = "carried-forward"
    MEAN_IMPUTED = "mean-imputed"


@dataclass(frozen=True)
class CulturalIndices:
    """The six cultural dimension scores of one country; any may be missing."""

    pdi: Optional[float] = None
    idv: Optional[float] = None
    mas: Optional[float] = None
    uai: Optional[float] = None
    ltowvs: Optional[float] = None
    ivr: Optional[float] = None

    def __post_init__(self) -> None:
        for name in CULTURAL_FIELDS:
            value = getattr(self, name)
            if value is None:
                continue
            if not math.isfinite(value) or not CULTURAL_MIN <= value <= CULTURAL_MAX:
                raise DataValidationError(
                    f"Cultural index {name} = {value} outside [{CULTURAL_MIN:g}, {CULTURAL_MAX:g}]"
                )

    def missing_fields(self) -> List[str]:
        return [name for name in CULTURAL_FIELDS if getattr(self, name) is None]

    def is_complete(self) -> bool:
        return not self.missing_fields()

    def as_dict(self) -> Dict[str, Optional[float]]:
        return {name: getattr(self, name) for name in CULTURAL_FIELDS}

    def values(self) -> List[float]:
        if not self.is_complete():
            raise DataValidationError(f"Cultural indices incomplete: missing {self.missing_fields()}")
        return [float(getattr(self, name)) for name in CULTURAL_FIELDS]


@dataclass(frozen=True)
class IndicatorObservation:
    country: CountryCode
    category: Category
    name: str
    year: int
    value: float
    provenance: Provenance = Provenance.OBSERVED

    def __post_init__(self) -> None:
        if not YEAR_MIN <= self.year <= YEAR_MAX:
            raise DataValidationError(
                f"{self.country}/{self.name}: year {self.year} outside [{YEAR_MIN}, {YEAR_MAX}]"
            )
        if not math.isfinite(self.value):
            raise DataValidationError(f"{self.country}/{self.name}: non-finite value {self.value}")


@dataclass(frozen=True)
class CountryProfile:
    """
    A country's complete context: cultural indices plus named indicator values.

    ``indicators`` and ``provenance`` keep the join's indicator order and must not
    be mutated after construction.
    """

    country: CountryCode
    culture: CulturalIndices
    indicators: Dict[str, float]
    provenance: Dict[str, Provenance] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.culture.is_complete():
            raise DataValidationError(
                f"{self.country}: profile requires all six cultural indices, "
                f"missing {self.culture.missing_fields()}"
            )
        for name, value in self.indicators.items():
            if not math.isfinite(value):
                raise DataValidationError(f"{self.country}: indicator {name} is not finite")

    @property
    def indicator_names(self) -> List[str]:
        return list(self.indicators)

    def feature_names(self) -> List[str]:
        return list(CULTURAL_FIELDS) + self.indicator_names

    def feature_vector(self, names: Optional[Sequence[str]] = None) -> List[float]:
        """Values for culture and indicators, in ``names`` order when given."""
        lookup = dict(zip(CULTURAL_FIELDS, self.culture.values()))
        lookup.update(self.indicators)
        names = list(names) if names is not None else self.feature_names()
        try:
            return [float(lookup[name]) for name in names]
        except KeyError as exc:
            raise DataValidationError(f"{self.country}: profile has no feature {exc.args[0]!r}") from exc

    def to_json_dict(self) -> Dict:
        return {
            "country": str(self.country),
            "culture": self.culture.as_dict(),
            "indicators": dict(self.indicators),
            "provenance": {name: flag.value for name, flag in self.provenance.items()},
        }

    @classmethod
    def from_json_dict(cls, payload: Dict) -> "CountryProfile":
        return cls(
            country=CountryCode(payload["country"]),
            culture=CulturalIndices(**payload["culture"]),
            indicators={name: float(value) for name, value in payload["indicators"].items()},
            provenance={
                name: Provenance(flag) for name, flag in payload.get("provenance", {}).items()
            },
        )
