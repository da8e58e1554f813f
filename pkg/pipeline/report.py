"""
Report bundle: copies of the run's result tables and models plus a manifest
with a SHA-256 per file.
"""

from __future__ import annotations

import hashlib
import json
import logging
import shutil
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from config.errors import DataValidationError
from config.log import make_log
from evaluation.comparison import format_comparison
from evaluation.reference import published_reference_table
from pipeline.artifacts import ArtifactLayout
from pipeline.run_config import RunConfig
from pipeline.stages import ANN_MODELS

logger = logging.getLogger(__name__)

MANIFEST_VERSION = 1
PUBLISHED_REFERENCE_NAME = "published_reference.txt"


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1024 * 1024), b""):
            digest.update(chunk)
    return digest.hexdigest()


def bundle_sources(config: RunConfig, layout: ArtifactLayout) -> List[Tuple[str, Path, str]]:
    """(bundle name, source path, stage that writes it) for every bundled artifact."""
    slug, _ = ANN_MODELS[config.preset]
    return [
        ("comparison.csv", layout.comparison_csv, "compare"),
        ("comparison.txt", layout.comparison_text, "compare"),
        ("metrics.json", layout.metrics, "evaluate"),
        ("heatmap.csv", layout.heatmap, "features"),
        ("scatter.csv", layout.scatter, "features"),
        ("scatter_summary.csv", layout.scatter_summary, "features"),
        ("reduction_report.json", layout.reduction_report, "features"),
        (f"{slug}_select.json", layout.model(slug, "select"), "train"),
        (f"{slug}_select_history.csv", layout.history(slug, "select"), "train"),
    ]


def emit_report(
    config: RunConfig,
    layout: ArtifactLayout,
    config_base: Optional[Path] = None,
    log_callback: Optional[Callable[[str], None]] = None,
) -> Path:
    """
    Copy every bundled artifact into ``report/`` and write ``manifest.json``.

    The manifest holds no timestamps or absolute paths, so two runs with the
    same config and seed produce identical bundles.

    Raises:
        MissingArtifactError: an upstream artifact is absent; names the stage to rerun.
    """
    log = make_log(logger, log_callback)
    log("=" * 80)
    log("STEP 9: EMITTING REPORT")
    log("=" * 80)
    sources = bundle_sources(config, layout)
    for _, path, stage in sources:
        layout.require(path, stage)

    layout.report_dir.mkdir(parents=True, exist_ok=True)
    artifacts: List[Dict] = []
    for name, path, stage in sources:
        target = layout.report_dir / name
        shutil.copyfile(path, target)
        artifacts.append({"name": name, "stage": stage, "bytes": target.stat().st_size, "sha256": sha256_file(target)})

    reference = layout.report_dir / PUBLISHED_REFERENCE_NAME
    reference.write_text(format_comparison(published_reference_table()), encoding="utf-8")
    artifacts.append(
        {"name": PUBLISHED_REFERENCE_NAME, "stage": "report", "bytes": reference.stat().st_size, "sha256": sha256_file(reference)}
    )

    manifest = {
        "version": MANIFEST_VERSION,
        "seed": config.seed,
        "config": config.to_dict(relative_to=config_base or Path.cwd()),
        "artifacts": artifacts,
    }
    with layout.manifest.open("w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, ensure_ascii=False)
        f.write("\n")
    log(f"✅ Report bundle with {len(artifacts)} artifacts at {layout.report_dir}")
    return layout.manifest


def verify_manifest(manifest_path: Path) -> List[str]:
    """Names of bundled files whose content no longer matches the manifest."""
    manifest_path = Path(manifest_path)
    with manifest_path.open("r", encoding="utf-8") as f:
        manifest = json.load(f)
    if manifest.get("version") != MANIFEST_VERSION:
        raise DataValidationError(f"{manifest_path}: unsupported manifest version {manifest.get('version')!r}")
    mismatched = []
    for entry in manifest["artifacts"]:
        path = manifest_path.parent / entry["name"]
        if not path.exists() or sha256_file(path) != entry["sha256"]:
            mismatched.append(entry["name"])
    return mismatched
