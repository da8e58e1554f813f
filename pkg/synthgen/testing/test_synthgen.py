"""
Tests for plan catalogs, synthetic aggregates and synthetic indicator context.
"""

import random
from collections import Counter, defaultdict

import numpy as np
import pytest

from config.errors import DataValidationError
from ingest.indicators import DEFAULT_INDICATORS, Category
from ingest.socioeconomic import parse_socioeconomic_csv
from synthgen.catalog import Plan, PlanCatalog, default_catalog, load_catalog, save_catalog
from synthgen.config import SynthConfig, load_synth_config, save_synth_config
from synthgen.context import CATEGORY_FILES, generate_context, write_context
from synthgen.generator import (
    MODELING_COLUMNS,
    country_scores,
    expected_plans,
    generate,
    read_aggregates_csv,
    read_ground_truth_csv,
    write_aggregates_csv,
    write_ground_truth_csv,
)


def _config(sample_profiles, **overrides):
    values = dict(seed=42, rows=2000, countries=tuple(p.country for p in sample_profiles), noise=0.15)
    values.update(overrides)
    return SynthConfig(**values)


# ---------------------------------------------------------------- catalog


def test_catalog_requires_two_plans():
    with pytest.raises(DataValidationError, match="at least 2"):
        PlanCatalog({"US": (Plan("Basic", 8.0),)})


def test_catalog_requires_increasing_prices():
    with pytest.raises(DataValidationError, match="strictly increase"):
        PlanCatalog({"US": (Plan("Basic", 8.0), Plan("Premium", 8.0))})


def test_catalog_requires_unique_labels():
    with pytest.raises(DataValidationError, match="repeats"):
        PlanCatalog({"US": (Plan("Basic", 8.0), Plan("Basic", 12.0))})


def test_default_catalog_applies_price_levels():
    catalog = default_catalog(["US", "IN"], price_levels={"IN": 0.5})
    assert catalog.labels("US") == ["Basic", "Standard", "Premium"]
    assert catalog.prices("IN").tolist() == [4.5, 7.0, 9.0]
    assert catalog.price_of("US", "Standard") == 13.99


def test_catalog_json_round_trip(tmp_path):
    catalog = default_catalog(["US", "JP"], price_levels={"JP": 1.1})
    assert load_catalog(save_catalog(catalog, tmp_path / "catalog.json")) == catalog


def test_unknown_catalog_country():
    with pytest.raises(DataValidationError, match="FR"):
        default_catalog(["US"]).plans_for("FR")


# ---------------------------------------------------------------- config


@pytest.mark.parametrize(
    "kwargs",
    [
        {"rows": 0, "countries": ("US",)},
        {"noise": float("nan"), "countries": ("US",)},
        {"noise": 1.5, "countries": ("US",)},
        {"countries": ("US", "US")},
        {"signal_weights": {}, "countries": ("US",)},
        {"countries": ("usa",)},
    ],
)
def test_synth_config_validation(kwargs):
    with pytest.raises(DataValidationError):
        SynthConfig(**kwargs)


def test_synth_config_json_round_trip(tmp_path):
    config = SynthConfig(seed=3, rows=10, countries=("US", "JP"), noise=0.0)
    assert load_synth_config(save_synth_config(config, tmp_path / "synth.json")) == config


# ---------------------------------------------------------------- generation


def test_generate_full_size_over_fourteen_countries(sample_profiles, sample_catalog):
    config = _config(sample_profiles, rows=100_000)
    aggregates, truth = generate(config, sample_profiles, sample_catalog)
    assert len(aggregates) == 100_000
    assert len(truth) == 100_000
    assert len(MODELING_COLUMNS) == 7
    counts = Counter(agg.country for agg in aggregates)
    assert len(counts) == 14
    expected = 100_000 / 14
    assert all(abs(count - expected) <= 0.1 * expected for count in counts.values())


def test_noise_free_rows_pick_best_plan(sample_profiles, sample_catalog):
    config = _config(sample_profiles, noise=0.0)
    aggregates, truth = generate(config, sample_profiles, sample_catalog)
    best = expected_plans(config, sample_profiles, sample_catalog)
    for i, agg in enumerate(aggregates):
        assert agg.plan_to == best[agg.country] == truth[i]
        assert agg.price_to == sample_catalog.price_of(agg.country, best[agg.country])


def test_noise_free_targets_recoverable_from_country_features(sample_profiles, sample_catalog):
    config = _config(sample_profiles, noise=0.0)
    aggregates, truth = generate(config, sample_profiles, sample_catalog)
    vectors = {p.country: np.array(p.feature_vector()) for p in sample_profiles}

    centroid_labels = defaultdict(Counter)
    for i, agg in enumerate(aggregates):
        centroid_labels[agg.country][truth[i]] += 1
    centroids = [(vectors[code], labels.most_common(1)[0][0]) for code, labels in centroid_labels.items()]

    correct = 0
    for i, agg in enumerate(aggregates):
        distances = [np.linalg.norm(vectors[agg.country] - centroid) for centroid, _ in centroids]
        correct += centroids[int(np.argmin(distances))][1] == truth[i]
    assert correct == len(aggregates)


def test_best_plan_never_cheaper_for_higher_score(sample_profiles, sample_catalog):
    config = _config(sample_profiles, noise=0.0)
    by_code = {p.country: p for p in sample_profiles}
    scores = country_scores(by_code, config.countries, config.signal_weights)
    best = expected_plans(config, sample_profiles, sample_catalog)
    tier = {code: sample_catalog.labels(code).index(best[code]) for code in best}
    ordered = sorted(scores, key=lambda code: (scores[code], code))
    assert [tier[code] for code in ordered] == sorted(tier.values())


def test_generation_spreads_targets_across_plans(sample_profiles, sample_catalog):
    aggregates, _ = generate(_config(sample_profiles), sample_profiles, sample_catalog)
    assert set(agg.plan_to for agg in aggregates) == {"Basic", "Standard", "Premium"}


def test_rows_satisfy_aggregate_invariants(sample_profiles, sample_catalog):
    aggregates, truth = generate(_config(sample_profiles), sample_profiles, sample_catalog)
    for i, agg in enumerate(aggregates):
        labels = sample_catalog.labels(agg.country)
        assert agg.plan_from in labels and agg.plan_to in labels
        assert agg.price_to <= agg.price_from
        assert min(agg.n_accounts, agg.n_plan_changes, agg.n_same_day_downgrades) >= 1
        assert 1 <= agg.change_month <= 12
        assert truth[i] == agg.plan_to


def test_same_seed_gives_identical_files(tmp_path, sample_profiles, sample_catalog):
    config = _config(sample_profiles)
    first = write_aggregates_csv(generate(config, sample_profiles, sample_catalog)[0], tmp_path / "a.csv")
    second = write_aggregates_csv(generate(config, sample_profiles, sample_catalog)[0], tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()


def test_profile_order_does_not_matter(sample_profiles, sample_catalog):
    config = _config(sample_profiles)
    shuffled = list(sample_profiles)
    random.Random(5).shuffle(shuffled)
    assert generate(config, shuffled, sample_catalog) == generate(config, sample_profiles, sample_catalog)


def test_unknown_country_rejected_before_generation(sample_profiles, sample_catalog):
    config = _config(sample_profiles, countries=("US", "SE"))
    with pytest.raises(DataValidationError, match="SE"):
        generate(config, sample_profiles, sample_catalog)


def test_unknown_signal_feature_rejected(sample_profiles, sample_catalog):
    config = _config(sample_profiles, signal_weights={"not_a_feature": 1.0})
    with pytest.raises(DataValidationError, match="not_a_feature"):
        generate(config, sample_profiles, sample_catalog)


def test_aggregate_and_truth_files_round_trip(tmp_path, sample_profiles, sample_catalog):
    aggregates, truth = generate(_config(sample_profiles, rows=300), sample_profiles, sample_catalog)
    assert read_aggregates_csv(write_aggregates_csv(aggregates, tmp_path / "rows.csv")) == aggregates
    assert read_ground_truth_csv(write_ground_truth_csv(truth, tmp_path / "truth.csv")) == truth


# ---------------------------------------------------------------- context


def test_context_covers_every_indicator():
    grouped = generate_context(["US", "JP"], seed=1, stale_fraction=0.0)
    assert set(grouped) == set(Category)
    for category, observations in grouped.items():
        names = {obs.name for obs in observations}
        assert len(names) == 9
        assert {obs.country for obs in observations} == {"JP", "US"}
    total = sum(len(observations) for observations in grouped.values())
    assert total == 2 * len(DEFAULT_INDICATORS) * 5


def test_context_stale_series_only_miss_latest_year():
    grouped = generate_context(["US", "JP", "DE"], seed=2, stale_fraction=0.5)
    years = defaultdict(set)
    for observations in grouped.values():
        for obs in observations:
            years[(obs.country, obs.name)].add(obs.year)
    assert all(found in ({2017, 2018, 2019, 2020, 2021}, {2017, 2018, 2019, 2020}) for found in years.values())
    assert any(2021 not in found for found in years.values())


def test_context_files_parse_back(tmp_path):
    grouped = generate_context(["US", "JP"], seed=4)
    paths = write_context(grouped, tmp_path)
    assert sorted(path.name for path in paths.values()) == sorted(CATEGORY_FILES.values())
    for category, path in paths.items():
        assert parse_socioeconomic_csv(path, category) == grouped[category]
