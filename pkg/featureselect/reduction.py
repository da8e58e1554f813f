"""
Correlation-based feature reduction.

Two passes over "units" (a standalone column or a whole one-hot group, scored
by its strongest member correlation with the target):

1. drop every unit whose |r| to the target is below ``t_low``;
2. walk the survivors from strongest to weakest (ties by name) and drop a unit
   when it correlates above ``t_redundant`` with a unit already kept.

The result is a fixed point: reducing the kept set again keeps everything.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from config.errors import DataValidationError
from featureselect.correlation import CorrelationMatrix
from preprocess.matrix import FeatureMatrix

logger = logging.getLogger(__name__)

DEFAULT_T_LOW = 0.25
DEFAULT_T_REDUNDANT = 0.9
REPORT_VERSION = 1


@dataclass(frozen=True)
class LowTargetDrop:
    name: str
    r: float


@dataclass(frozen=True)
class RedundantDrop:
    dropped: str
    kept_partner: str
    r: float


@dataclass(frozen=True)
class ReductionReport:
    target: str
    t_low: float
    t_redundant: float
    kept: Tuple[str, ...]
    dropped_low_target: Tuple[LowTargetDrop, ...] = field(default_factory=tuple)
    dropped_redundant: Tuple[RedundantDrop, ...] = field(default_factory=tuple)

    @property
    def dropped(self) -> List[str]:
        return [d.name for d in self.dropped_low_target] + [d.dropped for d in self.dropped_redundant]

    def to_dict(self) -> Dict:
        return {
            "version": REPORT_VERSION,
            "target": self.target,
            "t_low": self.t_low,
            "t_redundant": self.t_redundant,
            "kept": list(self.kept),
            "dropped_low_target": [{"name": d.name, "r": d.r} for d in self.dropped_low_target],
            "dropped_redundant": [
                {"dropped": d.dropped, "kept_partner": d.kept_partner, "r": d.r} for d in self.dropped_redundant
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ReductionReport":
        return cls(
            target=payload["target"],
            t_low=float(payload["t_low"]),
            t_redundant=float(payload["t_redundant"]),
            kept=tuple(payload["kept"]),
            dropped_low_target=tuple(LowTargetDrop(d["name"], float(d["r"])) for d in payload["dropped_low_target"]),
            dropped_redundant=tuple(
                RedundantDrop(d["dropped"], d["kept_partner"], float(d["r"])) for d in payload["dropped_redundant"]
            ),
        )


def _units(corr: CorrelationMatrix, target: str) -> Dict[str, List[str]]:
    units: Dict[str, List[str]] = {}
    for name in corr.names:
        if name == target:
            continue
        units.setdefault(corr.groups.get(name, name), []).append(name)
    return units


def reduce_features(
    corr: CorrelationMatrix,
    target: str,
    t_low: float = DEFAULT_T_LOW,
    t_redundant: float = DEFAULT_T_REDUNDANT,
) -> ReductionReport:
    """
    Reduce the features of ``corr`` against ``target``.

    Args:
        corr: Correlation matrix including the target column.
        target: Target column name.
        t_low: Minimum |r| to the target a unit needs to survive.
        t_redundant: Pairwise |r| above which the weaker unit is dropped.

    Returns:
        Kept columns plus both kinds of drops, with the r values that decided them.
    """
    if not 0.0 <= t_low <= 1.0 or not 0.0 <= t_redundant <= 1.0:
        raise DataValidationError(f"Thresholds must lie in [0, 1], got t_low={t_low}, t_redundant={t_redundant}")
    t_index = corr.index(target)
    if target in corr.constant:
        raise DataValidationError(f"Target column {target!r} is constant; correlations are undefined")

    to_target = {name: float(corr.r[corr.index(name), t_index]) for name in corr.names}
    units = _units(corr, target)
    score = {unit: max(abs(to_target[m]) for m in members) for unit, members in units.items()}

    low: List[LowTargetDrop] = []
    survivors = []
    for unit, members in units.items():
        if score[unit] < t_low:
            low.extend(LowTargetDrop(m, to_target[m]) for m in members)
        else:
            survivors.append(unit)

    redundant: List[RedundantDrop] = []
    kept_units: List[str] = []
    for unit in sorted(survivors, key=lambda u: (-score[u], u)):
        partner = None
        for other in kept_units:
            block = corr.r[np.ix_([corr.index(m) for m in units[unit]], [corr.index(m) for m in units[other]])]
            strongest = np.unravel_index(int(np.argmax(np.abs(block))), block.shape)
            if abs(block[strongest]) > t_redundant:
                partner = (units[other][strongest[1]], float(block[strongest]))
                break
        if partner is None:
            kept_units.append(unit)
        else:
            redundant.extend(RedundantDrop(m, partner[0], partner[1]) for m in units[unit])

    kept_set = {m for unit in kept_units for m in units[unit]}
    kept = tuple(name for name in corr.names if name in kept_set)
    logger.info(
        "Feature reduction: kept %d, dropped %d below t_low=%g, %d redundant above %g",
        len(kept), len(low), t_low, len(redundant), t_redundant,
    )
    return ReductionReport(
        target=target,
        t_low=t_low,
        t_redundant=t_redundant,
        kept=kept,
        dropped_low_target=tuple(low),
        dropped_redundant=tuple(redundant),
    )


def select_features(matrix: FeatureMatrix, report: ReductionReport) -> FeatureMatrix:
    """Keep the report's columns (and the target) of ``matrix``."""
    if report.target != matrix.target_name:
        raise DataValidationError(
            f"Reduction report targets {report.target!r}, matrix targets {matrix.target_name!r}"
        )
    return matrix.select(report.kept)


def save_reduction_report(report: ReductionReport, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(report.to_dict(), f, indent=2)
        f.write("\n")
    return path


def load_reduction_report(path: Union[str, Path]) -> ReductionReport:
    with Path(path).open("r", encoding="utf-8") as f:
        return ReductionReport.from_dict(json.load(f))
