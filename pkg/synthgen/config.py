"""
Synthetic generation settings.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Mapping, Tuple, Union

from config.errors import DataValidationError
from config.settings import settings
from ingest.countries import validate_country_code

DEFAULT_SIGNAL_WEIGHTS: Dict[str, float] = {
    "idv": 1.0,
    "ivr": 0.6,
    "ltowvs": -0.8,
    "gdp_per_capita": 0.9,
    "streaming_tv_population_share": 0.7,
}


@dataclass(frozen=True)
class SynthConfig:
    """
    Knobs of the planted price-preference signal.

    ``noise`` scales the Gumbel perturbation of plan utilities (0 makes every
    row pick its country's best plan); ``sharpness`` scales how strongly a
    country's preference position pulls toward one plan.
    """

    seed: int = field(default_factory=lambda: settings.default_seed)
    rows: int = 100_000
    countries: Tuple[str, ...] = ()
    noise: float = 0.15
    signal_weights: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_SIGNAL_WEIGHTS))
    sharpness: float = 8.0
    change_year: int = 2022

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "countries", tuple(validate_country_code(code) for code in self.countries)
        )
        if self.rows < 1:
            raise DataValidationError(f"rows must be >= 1, got {self.rows}")
        if not math.isfinite(self.noise) or not 0.0 <= self.noise <= 1.0:
            raise DataValidationError(f"noise must be a finite value in [0, 1], got {self.noise}")
        if not math.isfinite(self.sharpness) or self.sharpness <= 0:
            raise DataValidationError(f"sharpness must be positive, got {self.sharpness}")
        if not self.signal_weights:
            raise DataValidationError("signal_weights must name at least one profile feature")
        if len(set(self.countries)) != len(self.countries):
            raise DataValidationError(f"countries repeat a code: {list(self.countries)}")

    def to_dict(self) -> Dict:
        payload = asdict(self)
        payload["countries"] = list(self.countries)
        return payload

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SynthConfig":
        known = {name: payload[name] for name in cls.__dataclass_fields__ if name in payload}
        if "countries" in known:
            known["countries"] = tuple(known["countries"])
        if "signal_weights" in known:
            known["signal_weights"] = {k: float(v) for k, v in known["signal_weights"].items()}
        return cls(**known)


def save_synth_config(config: SynthConfig, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(config.to_dict(), f, indent=2)
        f.write("\n")
    return path


def load_synth_config(path: Union[str, Path]) -> SynthConfig:
    with Path(path).open("r", encoding="utf-8") as f:
        return SynthConfig.from_dict(json.load(f))
