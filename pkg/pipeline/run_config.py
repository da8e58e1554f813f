"""
Run configuration: one JSON file plus command-line overrides.

Relative paths in the file resolve against the file's own directory, so a run
is the same from any working directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from config.errors import DataValidationError, ParseError, UsageError
from config.settings import Settings
from featureselect.reduction import DEFAULT_T_LOW, DEFAULT_T_REDUNDANT
from ingest.profiles import DEFAULT_MAX_STALENESS, ImputationPolicy
from neuralnet.config import PUBLISHED_BATCH_GRID, PUBLISHED_EPOCH_GRID, Preset
from preprocess.prepare import PreprocessOptions
from preprocess.splitting import DEFAULT_RATIOS
from synthgen.config import SynthConfig

PATH_FIELDS = ("cultural_path", "socioeconomic_dir", "catalog_path", "domain_path", "output_dir")
DEFAULT_OUTPUT_DIR = "runs/default"


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a pipeline run depends on.

    ``socioeconomic_dir`` holds the four category CSVs; when unset the run
    uses the synthetic context written by ``synth --context``.
    ``domain_path`` points at a subscriber-aggregate CSV; when unset the
    aggregates are generated from ``synth``.
    """

    seed: int
    cultural_path: Optional[Path] = None
    socioeconomic_dir: Optional[Path] = None
    catalog_path: Optional[Path] = None
    domain_path: Optional[Path] = None
    output_dir: Optional[Path] = None

    synth: Dict = field(default_factory=dict)
    imputation: Tuple[str, ...] = (ImputationPolicy.CARRY_FORWARD.value,)
    max_staleness: int = DEFAULT_MAX_STALENESS

    categorical_columns: Optional[Tuple[str, ...]] = None
    log_columns: Optional[Tuple[str, ...]] = None
    ratios: Tuple[float, float, float] = DEFAULT_RATIOS
    z_threshold: float = 4.0

    t_low: float = DEFAULT_T_LOW
    t_redundant: float = DEFAULT_T_REDUNDANT

    preset: Preset = Preset.FINAL
    epochs: Optional[int] = None
    batch_size: Optional[int] = None
    batch_grid: Tuple[int, ...] = PUBLISHED_BATCH_GRID
    epoch_grid: Tuple[int, ...] = PUBLISHED_EPOCH_GRID

    sgd_epochs: int = 100
    sgd_learning_rate: float = 0.01
    rf_trees: int = 100
    rf_max_depth: Optional[int] = None
    max_workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "preset", Preset(self.preset))
        for name in ("t_low", "t_redundant"):
            value = getattr(self, name)
            if not 0.0 <= float(value) <= 1.0:
                raise DataValidationError(f"{name} must lie in [0, 1], got {value}")
        if len(self.ratios) != 3:
            raise DataValidationError(f"ratios needs three parts, got {list(self.ratios)}")
        if self.max_workers < 1:
            raise DataValidationError(f"max_workers must be >= 1, got {self.max_workers}")
        for policy in self.imputation:
            ImputationPolicy(policy)

    def synth_config(self) -> SynthConfig:
        payload = dict(self.synth)
        payload.setdefault("seed", self.seed)
        return SynthConfig.from_dict(payload)

    def preprocess_options(self) -> PreprocessOptions:
        options = PreprocessOptions(seed=self.seed, ratios=tuple(self.ratios), z_threshold=self.z_threshold)
        changes = {}
        if self.categorical_columns is not None:
            changes["categorical_columns"] = tuple(self.categorical_columns)
        if self.log_columns is not None:
            changes["log_columns"] = tuple(self.log_columns)
        return replace(options, **changes)

    def with_overrides(self, **changes) -> "RunConfig":
        """Apply every override that is not None."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def check_paths(self) -> None:
        """Every referenced input must exist before a command starts."""
        for name in ("cultural_path", "socioeconomic_dir", "catalog_path", "domain_path"):
            path = getattr(self, name)
            if path is not None and not path.exists():
                raise DataValidationError(f"{name} does not exist: {path}")

    def to_dict(self, relative_to: Optional[Path] = None) -> Dict:
        """
        JSON-ready form. Paths are written relative to ``relative_to`` when
        given; ``output_dir`` is left out in that case so the echo does not
        depend on where a run was written.
        """
        payload: Dict = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in PATH_FIELDS:
                if relative_to is not None and f.name == "output_dir":
                    continue
                if value is not None and relative_to is not None:
                    value = Path(os.path.relpath(value, relative_to)).as_posix()
                elif value is not None:
                    value = str(value)
            elif isinstance(value, Preset):
                value = value.value
            elif isinstance(value, tuple):
                value = list(value)
            payload[f.name] = value
        return payload

    @classmethod
    def from_dict(cls, payload: Mapping, base_dir: Union[str, Path] = ".", seed: Optional[int] = None) -> "RunConfig":
        base_dir = Path(base_dir)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise UsageError(f"Unknown run config keys: {unknown}")
        values: Dict = {}
        for name, value in payload.items():
            if name in PATH_FIELDS and value is not None:
                value = (base_dir / Path(value)).resolve()
            elif isinstance(value, list):
                value = tuple(value)
            values[name] = value
        values.setdefault("seed", seed if seed is not None else Settings().default_seed)
        return cls(**values)


def load_run_config(path: Optional[Union[str, Path]]) -> RunConfig:
    """Read a run config file; without one, every field takes its default."""
    if path is None:
        return RunConfig.from_dict({}, base_dir=Path.cwd())
    path = Path(path)
    if not path.exists():
        raise UsageError(f"Run config not found: {path}")
    try:
        with path.open("r", encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid run config JSON: {exc.msg}", path, exc.lineno) from exc
    if not isinstance(payload, dict):
        raise UsageError(f"{path}: run config must be a JSON object")
    return RunConfig.from_dict(payload, base_dir=path.resolve().parent)


def resolve_output_dir(
    config: RunConfig,
    flag: Optional[Union[str, Path]],
    settings: Optional[Settings] = None,
) -> Path:
    """
    Flag first, then the config file, then the environment, then
    ``runs/default`` under the working directory.
    """
    if flag is not None:
        return Path(flag).expanduser().resolve()
    if config.output_dir is not None:
        return config.output_dir
    env_root = (settings or Settings()).output_root_path()
    if env_root is not None:
        return env_root
    return (Path.cwd() / DEFAULT_OUTPUT_DIR).resolve()


def parse_int_list(raw: Optional[str]) -> Optional[List[int]]:
    """``"16,32,64"`` to ``[16, 32, 64]``; None stays None."""
    if raw is None:
        return None
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"Expected comma-separated integers, got {raw!r}") from exc
