"""
Command-line pipeline: run config, artifact layout, stages and the report bundle.
"""

from pipeline.artifacts import ArtifactLayout
from pipeline.cli import build_parser, run_command, run_pipeline
from pipeline.report import emit_report, verify_manifest
from pipeline.run_config import RunConfig, load_run_config, resolve_output_dir

__all__ = [
    "ArtifactLayout",
    "build_parser",
    "run_command",
    "run_pipeline",
    "emit_report",
    "verify_manifest",
    "RunConfig",
    "load_run_config",
    "resolve_output_dir",
]
