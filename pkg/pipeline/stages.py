"""
Pipeline stages. Each stage reads its inputs from the run config or from
earlier stages' artifacts and writes only under the run's output directory.
"""

from __future__ import annotations

import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from baselines.naive_bayes import gnb_fit
from baselines.persistence import baseline_predict, load_baseline, save_baseline
from baselines.random_forest import rf_fit
from baselines.sgd import sgd_fit
from config.errors import UsageError
from config.log import make_log
from evaluation.bridge import PlanAccuracyScorer, prices_to_classes
from evaluation.comparison import ModelRun, compare_models, format_comparison, write_comparison
from evaluation.metrics import MetricsReport, evaluate_predictions
from featureselect.correlation import correlation_matrix
from featureselect.exports import write_heatmap_csv, write_scatter_exports
from featureselect.reduction import load_reduction_report, reduce_features, save_reduction_report, select_features
from ingest.cultural import parse_cultural_csv
from ingest.indicators import indicator_names
from ingest.profiles import build_profiles, load_profiles, save_profiles
from ingest.socioeconomic import parse_socioeconomic_csv
from neuralnet.config import MlpConfig, Preset, check_rules_of_thumb, default_architecture
from neuralnet.grid_search import grid_search, write_trial_table
from neuralnet.serialization import load_model, save_model
from neuralnet.training import predict, train, write_history_csv
from pipeline.artifacts import FEATURE_SETS, ArtifactLayout
from pipeline.run_config import RunConfig
from preprocess.build import build_base_matrix
from preprocess.cache import CachedMatrix, load_matrix, save_matrix, sidecar_path
from preprocess.matrix import FeatureMatrix, count_model_inputs
from preprocess.prepare import prepare_features
from synthgen.catalog import PlanCatalog, default_catalog, load_catalog, save_catalog
from synthgen.context import CATEGORY_FILES, generate_context, write_context
from synthgen.generator import generate, read_aggregates_csv, write_aggregates_csv, write_ground_truth_csv
from synthgen.config import save_synth_config

logger = logging.getLogger(__name__)

LogCallback = Optional[Callable[[str], None]]

# slug -> display name, in comparison order
ANN_MODELS: Dict[Preset, Tuple[str, str]] = {
    Preset.FINAL: ("ann_final", "ANN final"),
    Preset.ORIGINAL: ("ann_original", "ANN original"),
}
BASELINE_MODELS: Tuple[Tuple[str, str], ...] = (
    ("sgd", "SGD"),
    ("gnb", "Gaussian NB"),
    ("rf", "Random Forest"),
)


def _banner(log: Callable[[str], None], title: str) -> None:
    log("=" * 80)
    log(title)
    log("=" * 80)


def _write_json(payload, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, ensure_ascii=False)
        f.write("\n")
    return path


def _read_json(path: Path):
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def _cultural_entries(config: RunConfig):
    if config.cultural_path is None:
        raise UsageError("The run config needs a cultural_path")
    return parse_cultural_csv(config.cultural_path)


def _catalog(config: RunConfig, layout: ArtifactLayout) -> PlanCatalog:
    if config.catalog_path is not None:
        return load_catalog(config.catalog_path)
    return load_catalog(layout.require(layout.catalog, "synth"))


def _cached_matrix(layout: ArtifactLayout) -> CachedMatrix:
    layout.require(layout.matrix, "preprocess")
    layout.require(sidecar_path(layout.matrix), "preprocess")
    cached = load_matrix(layout.matrix)
    if cached.split is None or cached.scaler is None:
        raise UsageError(f"{layout.matrix} was not written by the preprocess stage")
    return cached


def _feature_views(cached: CachedMatrix, layout: ArtifactLayout) -> Dict[str, FeatureMatrix]:
    report = load_reduction_report(layout.require(layout.reduction_report, "features"))
    return {"select": select_features(cached.matrix, report), "full": cached.matrix}


# ---------------------------------------------------------------- stages


def run_context(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Write synthetic indicator history for every country of the cultural file."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 0: SYNTHETIC INDICATOR CONTEXT")
    countries = [code for code, _ in _cultural_entries(config)]
    written = write_context(generate_context(countries, seed=config.seed), layout.context_dir)
    log(f"✅ Wrote {len(written)} indicator files for {len(countries)} countries to {layout.context_dir}")
    return {category.value: path for category, path in written.items()}


def run_ingest(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Parse, impute and join cultural and socio-economic data into country profiles."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 1: INGESTING COUNTRY DATA")
    cultural = _cultural_entries(config)
    log(f"📊 Parsed {len(cultural)} cultural rows from {config.cultural_path.name}")

    directory = config.socioeconomic_dir
    stage = "ingest"
    if directory is None:
        directory, stage = layout.context_dir, "synth --context"
    observations = []
    for category, filename in CATEGORY_FILES.items():
        path = layout.require(directory / filename, stage)
        observations.extend(parse_socioeconomic_csv(path, category))
    log(f"📊 Parsed {len(observations)} indicator observations")

    result = build_profiles(
        cultural, observations, indicator_names(), policies=config.imputation, max_staleness=config.max_staleness
    )
    for code, fields in result.excluded.items():
        log(f"⚠️  Excluded {code}: missing {', '.join(fields)}")
    save_profiles(result.profiles, layout.profiles)
    _write_json(result.excluded, layout.exclusions)
    log(f"✅ Saved {len(result.profiles)} country profiles")
    return {"profiles": layout.profiles, "exclusions": layout.exclusions}


def run_synth(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Generate subscriber aggregates for the profiled countries."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 2: GENERATING SUBSCRIBER AGGREGATES")
    profiles = load_profiles(layout.require(layout.profiles, "ingest"))
    codes = sorted(profile.country for profile in profiles)
    catalog = load_catalog(config.catalog_path) if config.catalog_path is not None else default_catalog(codes)

    synth_config = config.synth_config()
    if not synth_config.countries:
        synth_config = replace(synth_config, countries=tuple(code for code in codes if code in catalog))
    aggregates, truth = generate(synth_config, profiles, catalog)

    write_aggregates_csv(aggregates, layout.aggregates)
    write_ground_truth_csv(truth, layout.ground_truth)
    save_catalog(catalog, layout.catalog)
    save_synth_config(synth_config, layout.synth_config)
    log(f"✅ Generated {len(aggregates)} rows over {len(synth_config.countries)} countries (noise {synth_config.noise})")
    return {"aggregates": layout.aggregates, "ground_truth": layout.ground_truth, "catalog": layout.catalog}


def run_preprocess(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Build the base matrix and run the preprocessing chain."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 3: PREPROCESSING")
    source = config.domain_path or layout.require(layout.aggregates, "synth")
    aggregates = read_aggregates_csv(source)
    profiles = load_profiles(layout.require(layout.profiles, "ingest"))

    base = build_base_matrix(aggregates, profiles)
    prepared = prepare_features(base, config.preprocess_options())
    save_matrix(
        prepared.matrix, layout.matrix, prepared.scaler, prepared.split, prepared.categories, seed=config.seed
    )
    train_rows, val_rows, test_rows = prepared.split.sizes
    log(f"📊 Dropped {prepared.dropped_outliers} outlier rows")
    log(f"📊 Split {train_rows}/{val_rows}/{test_rows} rows, {count_model_inputs(prepared.matrix)} model inputs")
    log(f"✅ Saved matrix to {layout.matrix}")
    return {"matrix": layout.matrix}


def run_features(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Correlate the training rows, reduce the feature set and export the tables."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 4: FEATURE SELECTION")
    cached = _cached_matrix(layout)
    profiles = load_profiles(layout.require(layout.profiles, "ingest"))

    corr = correlation_matrix(cached.matrix.take(cached.split.train))
    report = reduce_features(corr, cached.matrix.target_name, config.t_low, config.t_redundant)
    save_reduction_report(report, layout.reduction_report)
    write_heatmap_csv(corr, layout.heatmap)
    write_scatter_exports(profiles, layout.scatter, layout.scatter_summary)

    log(f"📊 Kept {len(report.kept)} columns")
    log(f"📊 Dropped {len(report.dropped_low_target)} weak and {len(report.dropped_redundant)} redundant columns")
    log(f"✅ Saved reduction report to {layout.reduction_report}")
    return {
        "reduction_report": layout.reduction_report,
        "heatmap": layout.heatmap,
        "scatter": layout.scatter,
        "scatter_summary": layout.scatter_summary,
    }


def _validation_scorer(cached: CachedMatrix, catalog: PlanCatalog) -> PlanAccuracyScorer:
    rows = cached.split.validation
    countries = cached.matrix.countries()
    labels = cached.matrix.plan_labels()
    return PlanAccuracyScorer(
        catalog=catalog,
        scaler=cached.scaler,
        countries=tuple(countries[i] for i in rows),
        labels=tuple(labels[i] for i in rows),
        target_column=cached.matrix.target_name,
    )


def run_grid(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Grid-search batch size and epochs for the configured preset on the selected features."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 5: GRID SEARCH")
    cached = _cached_matrix(layout)
    matrix = _feature_views(cached, layout)["select"]
    names = matrix.feature_names
    base = default_architecture(len(names), config.preset, seed=config.seed)

    result = grid_search(
        matrix,
        cached.split,
        base,
        config.batch_grid,
        config.epoch_grid,
        scorer=_validation_scorer(cached, _catalog(config, layout)),
        feature_names=names,
        max_workers=config.max_workers,
        log_callback=log,
    )
    write_trial_table(result, layout.trials)
    best = result.trials[result.best_index]
    _write_json(
        {
            "preset": config.preset.value,
            "index": best.index,
            "batch_size": best.batch_size,
            "epochs": best.epochs,
            "seed": best.seed,
            "val_accuracy": best.val_accuracy,
        },
        layout.best_config,
    )
    log(f"✅ Wrote {len(result.trials)} trials to {layout.trials}")
    return {"trials": layout.trials, "best_config": layout.best_config}


def ann_config(config: RunConfig, layout: ArtifactLayout, input_dim: int, preset: Preset) -> MlpConfig:
    """
    Preset architecture for ``input_dim`` inputs. The grid's best batch size,
    epochs and seed apply to the preset it searched; explicit ``epochs`` and
    ``batch_size`` in the run config win over both.
    """
    mlp = default_architecture(input_dim, preset, seed=config.seed)
    if layout.best_config.exists():
        best = _read_json(layout.best_config)
        if best.get("preset") == preset.value:
            mlp = mlp.with_overrides(batch_size=int(best["batch_size"]), epochs=int(best["epochs"]), seed=int(best["seed"]))
    overrides = {"epochs": config.epochs, "batch_size": config.batch_size}
    return mlp.with_overrides(**{k: v for k, v in overrides.items() if v is not None})


def run_train(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Train both network presets and the three baselines on both feature sets."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 6: TRAINING MODELS")
    cached = _cached_matrix(layout)
    split = cached.split
    labels = cached.matrix.plan_labels()
    train_labels = [labels[i] for i in split.train]
    scaler_ref = sidecar_path(layout.matrix).relative_to(layout.root).as_posix()
    written: Dict[str, Path] = {}

    for features, matrix in _feature_views(cached, layout).items():
        names = matrix.feature_names
        log(f"\n📊 Feature set '{features}': {len(names)} inputs")
        for preset, (slug, title) in ANN_MODELS.items():
            mlp = ann_config(config, layout, len(names), preset)
            check_rules_of_thumb(mlp.layer_sizes)
            log(f"  🔄 {title}: layers {list(mlp.layer_sizes)}, batch {mlp.batch_size}, epochs {mlp.epochs}")
            model, history = train(matrix, split, mlp, names, log_callback=log)
            written[f"{slug}_{features}"] = save_model(model, layout.model(slug, features), names, scaler_ref)
            write_history_csv(history, layout.history(slug, features))

        x_train = matrix.features(names)[split.train]
        fitted = {
            "gnb": gnb_fit(x_train, train_labels),
            "sgd": sgd_fit(
                x_train, train_labels, learning_rate=config.sgd_learning_rate, epochs=config.sgd_epochs, seed=config.seed
            ),
            "rf": rf_fit(
                x_train,
                train_labels,
                n_trees=config.rf_trees,
                seed=config.seed,
                max_depth=config.rf_max_depth,
                max_workers=config.max_workers,
            ),
        }
        for slug, title in BASELINE_MODELS:
            written[f"{slug}_{features}"] = save_baseline(fitted[slug], layout.model(slug, features), names)
            log(f"  ✅ {title} fitted")
    log(f"✅ Saved {len(written)} models to {layout.models_dir}")
    return written


def _predict_labels(
    slug: str, path: Path, cached: CachedMatrix, catalog: PlanCatalog, rows: Sequence[int]
) -> List[str]:
    matrix = cached.matrix.take(rows)
    if slug.startswith("ann_"):
        saved = load_model(path)
        predictions = predict(saved.model, matrix, list(saved.feature_names))
        return prices_to_classes(
            predictions, matrix.countries(), catalog, cached.scaler, cached.matrix.target_name
        )
    model, names = load_baseline(path)
    return baseline_predict(model, matrix.features(list(names)))


def model_runs() -> List[Tuple[str, str, str]]:
    """(slug, display name, feature set) for every compared model."""
    runs = []
    for features in FEATURE_SETS:
        for slug, title in ANN_MODELS.values():
            runs.append((slug, title, features))
        for slug, title in BASELINE_MODELS:
            runs.append((slug, title, features))
    return runs


def run_evaluate(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Score every stored model on the test rows."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 7: EVALUATING MODELS")
    cached = _cached_matrix(layout)
    catalog = _catalog(config, layout)
    rows = cached.split.test
    true = [cached.matrix.plan_labels()[i] for i in rows]
    classes = sorted(set(catalog.all_labels()) | set(true))

    results = []
    for slug, title, features in model_runs():
        path = layout.require(layout.model(slug, features), "train")
        predicted = _predict_labels(slug, path, cached, catalog, rows)
        counts, report = evaluate_predictions(predicted, true, classes)
        results.append(
            {
                "slug": slug,
                "model": title,
                "features": features,
                "report": report.to_dict(),
                "confusion": counts.to_dict(),
            }
        )
        log(f"  📊 {title} ({features}): accuracy {report.accuracy:.4f}, F1 {report.f1:.4f}")
    _write_json({"test_rows": len(rows), "runs": results}, layout.metrics)
    log(f"✅ Saved metrics to {layout.metrics}")
    return {"metrics": layout.metrics}


def run_compare(config: RunConfig, layout: ArtifactLayout, log_callback: LogCallback = None) -> Dict[str, Path]:
    """Rank the evaluated models into the comparison table."""
    log = make_log(logger, log_callback)
    _banner(log, "STEP 8: COMPARING MODELS")
    payload = _read_json(layout.require(layout.metrics, "evaluate"))
    runs = [
        ModelRun(model=entry["model"], features=entry["features"], report=MetricsReport.from_dict(entry["report"]))
        for entry in payload["runs"]
    ]
    table = compare_models(runs)
    write_comparison(table, layout.comparison_csv, layout.comparison_text)
    for line in format_comparison(table).splitlines():
        log(line)
    return {"comparison_csv": layout.comparison_csv, "comparison_text": layout.comparison_text}
