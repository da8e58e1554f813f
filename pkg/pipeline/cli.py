"""
Command-line front door: ``python -m pipeline <subcommand>``.

Exit codes: 0 success, 1 usage error, 2 data or validation error, 3 numerical divergence.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from config.errors import PriceContextError, UsageError
from config.log import configure_logging
from config.settings import Settings
from neuralnet.config import Preset
from pipeline.artifacts import ArtifactLayout
from pipeline.report import emit_report
from pipeline.run_config import RunConfig, load_run_config, parse_int_list, resolve_output_dir
from pipeline.stages import (
    run_compare,
    run_context,
    run_evaluate,
    run_features,
    run_grid,
    run_ingest,
    run_preprocess,
    run_synth,
    run_train,
)

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("ingest", "synth", "preprocess", "features", "train", "grid", "evaluate", "compare", "report", "pipeline")


class _Parser(argparse.ArgumentParser):
    """Argument errors become ``UsageError`` (exit 1) instead of exiting with 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="Run config JSON; relative paths resolve against its directory")
    common.add_argument("--seed", type=int, help="Seed for every random stream of the run")
    common.add_argument("--output-dir", help="Output root (overrides the config and PRICE_CONTEXT_OUTPUT_DIR)")
    common.add_argument("--log-level", help="Logging level (default from PRICE_CONTEXT_LOG_LEVEL)")
    common.add_argument("--workers", type=int, help="Worker processes for grid trials and forest trees")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="pipeline", description="Culture-aware plan price prediction pipeline")
    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    add("ingest", "Parse, impute and join country data into profiles")

    synth = add("synth", "Generate subscriber aggregates (or the indicator context with --context)")
    synth.add_argument("--context", action="store_true", help="Write the synthetic indicator CSVs instead")

    add("preprocess", "Build and preprocess the feature matrix")
    features = add("features", "Correlate, reduce and export features")
    add("train", "Train the networks and baselines on both feature sets")
    grid = add("grid", "Grid-search batch size and epochs")
    add("evaluate", "Score every stored model on the test rows")
    add("compare", "Write the model comparison table")
    add("report", "Bundle the result artifacts with a manifest")
    full = add("pipeline", "Run every stage in order")

    for target in (synth, full):
        target.add_argument("--rows", type=int, help="Synthetic aggregate rows")
        target.add_argument("--noise", type=float, help="Synthetic label noise in [0, 1]")
    for target in (features, full):
        target.add_argument("--t-low", type=float, help="Minimum |r| to the target (default 0.25)")
        target.add_argument("--t-redundant", type=float, help="Pairwise |r| marking redundancy (default 0.9)")
    for target in (sub.choices["train"], grid, full):
        target.add_argument("--preset", choices=[p.value for p in Preset], help="Network preset")
        target.add_argument("--epochs", type=int, help="Training epochs")
        target.add_argument("--batch-size", type=int, help="Mini-batch size")
    for target in (grid, full):
        target.add_argument("--batch-grid", help="Comma-separated batch sizes, e.g. 16,32,64,96")
        target.add_argument("--epoch-grid", help="Comma-separated epoch counts, e.g. 25,50,100,120")
    return parser


def _apply_flags(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    synth = dict(config.synth)
    for flag in ("rows", "noise"):
        value = getattr(args, flag, None)
        if value is not None:
            synth[flag] = value
    batch_grid = parse_int_list(getattr(args, "batch_grid", None))
    epoch_grid = parse_int_list(getattr(args, "epoch_grid", None))
    return config.with_overrides(
        seed=args.seed,
        synth=synth,
        t_low=getattr(args, "t_low", None),
        t_redundant=getattr(args, "t_redundant", None),
        preset=Preset(args.preset) if getattr(args, "preset", None) else None,
        epochs=getattr(args, "epochs", None),
        batch_size=getattr(args, "batch_size", None),
        batch_grid=tuple(batch_grid) if batch_grid is not None else None,
        epoch_grid=tuple(epoch_grid) if epoch_grid is not None else None,
        max_workers=args.workers,
    )


def run_pipeline(
    config: RunConfig,
    layout: ArtifactLayout,
    config_base: Optional[Path] = None,
    log_callback: Optional[Callable[[str], None]] = None,
) -> Path:
    """Chain every stage; returns the report manifest path."""
    if config.socioeconomic_dir is None:
        run_context(config, layout, log_callback)
    run_ingest(config, layout, log_callback)
    if config.domain_path is None:
        run_synth(config, layout, log_callback)
    for stage in (run_preprocess, run_features, run_grid, run_train, run_evaluate, run_compare):
        stage(config, layout, log_callback)
    return emit_report(config, layout, config_base, log_callback)


def _dispatch(args: argparse.Namespace, config: RunConfig, layout: ArtifactLayout, config_base: Path) -> None:
    stages: Dict[str, Callable] = {
        "ingest": run_ingest,
        "preprocess": run_preprocess,
        "features": run_features,
        "train": run_train,
        "grid": run_grid,
        "evaluate": run_evaluate,
        "compare": run_compare,
    }
    if args.command in stages:
        stages[args.command](config, layout)
    elif args.command == "synth":
        (run_context if args.context else run_synth)(config, layout)
    elif args.command == "report":
        emit_report(config, layout, config_base)
    else:
        run_pipeline(config, layout, config_base)


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return UsageError.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = Settings()
    configure_logging(args.log_level or settings.log_level)
    try:
        config = _apply_flags(load_run_config(args.config), args)
        config.check_paths()
        layout = ArtifactLayout(resolve_output_dir(config, args.output_dir, settings))
        config_base = Path(args.config).resolve().parent if args.config else Path.cwd()
        _dispatch(args, config, layout, config_base)
    except PriceContextError as exc:
        logger.error("❌ %s", exc)
        return exc.exit_code
    except FileNotFoundError as exc:
        logger.error("❌ %s", exc)
        return 2
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_command(argv))
