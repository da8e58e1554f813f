"""
Centralized configuration for the price-context toolkit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
SAMPLE_DIR = DATA_DIR / "sample"


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() not in {"0", "false", "no", "off"}


@dataclass(frozen=True)
class Settings:
    """Environment-backed defaults shared by every package."""

    base_dir: Path = BASE_DIR
    data_dir: Path = DATA_DIR
    sample_dir: Path = SAMPLE_DIR

    output_root: str = field(default_factory=lambda: os.getenv("PRICE_CONTEXT_OUTPUT_DIR", ""))
    default_seed: int = field(default_factory=lambda: int(os.getenv("PRICE_CONTEXT_SEED", "42")))
    log_level: str = field(default_factory=lambda: os.getenv("PRICE_CONTEXT_LOG_LEVEL", "INFO"))
    show_progress: bool = field(default_factory=lambda: _env_flag("PRICE_CONTEXT_PROGRESS", "1"))
    max_workers: int = field(default_factory=lambda: int(os.getenv("PRICE_CONTEXT_MAX_WORKERS", "1")))

    def output_root_path(self) -> Optional[Path]:
        """Output root from the environment, or None when unset."""
        if not self.output_root:
            return None
        return Path(self.output_root).expanduser().resolve()


settings = Settings()
