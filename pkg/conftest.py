"""
Shared pytest fixtures and hypothesis profiles.
"""

import os

import hypothesis
import numpy as np
import pytest

from ingest.countries import CountryCode
from ingest.indicators import DEFAULT_INDICATORS, indicator_names
from ingest.models import CulturalIndices
from ingest.profiles import build_profiles
from preprocess.build import build_base_matrix
from preprocess.prepare import PreprocessOptions, prepare_features
from synthgen.catalog import default_catalog
from synthgen.config import SynthConfig
from synthgen.context import generate_context
from synthgen.generator import generate

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))

# pdi, idv, mas, uai, ltowvs, ivr
SAMPLE_CULTURE = {
    "AU": (38, 90, 61, 51, 21, 71),
    "BR": (69, 38, 49, 76, 44, 59),
    "CA": (39, 80, 52, 48, 36, 68),
    "CO": (67, 13, 64, 80, 13, 83),
    "DE": (35, 67, 66, 65, 83, 40),
    "ES": (57, 51, 42, 86, 48, 44),
    "FR": (68, 71, 43, 86, 63, 48),
    "GB": (35, 89, 66, 35, 51, 69),
    "IN": (77, 48, 56, 40, 51, 26),
    "IT": (50, 76, 70, 75, 61, 30),
    "JP": (54, 46, 95, 92, 88, 42),
    "KR": (60, 18, 39, 85, 100, 29),
    "MX": (81, 30, 69, 82, 24, 97),
    "US": (40, 91, 62, 46, 26, 68),
}


@pytest.fixture(scope="session")
def cultural_entries():
    return [(CountryCode(code), CulturalIndices(*values)) for code, values in SAMPLE_CULTURE.items()]


@pytest.fixture(scope="session")
def sample_profiles(cultural_entries):
    """Fourteen complete profiles over the default indicator set."""
    grouped = generate_context(SAMPLE_CULTURE, seed=7, stale_fraction=0.0)
    observations = [obs for group in grouped.values() for obs in group]
    return build_profiles(cultural_entries, observations, indicator_names(DEFAULT_INDICATORS)).profiles


@pytest.fixture(scope="session")
def sample_catalog():
    return default_catalog(SAMPLE_CULTURE)


@pytest.fixture(scope="session")
def noise_free_aggregates(sample_profiles, sample_catalog):
    """1000 noise-free aggregates over the sample countries."""
    config = SynthConfig(seed=42, rows=1000, countries=tuple(SAMPLE_CULTURE), noise=0.0)
    return generate(config, sample_profiles, sample_catalog)[0]


@pytest.fixture(scope="session")
def noise_free_prepared(noise_free_aggregates, sample_profiles):
    """Encoded, scaled and split matrix built from ``noise_free_aggregates``."""
    base = build_base_matrix(noise_free_aggregates, sample_profiles)
    return prepare_features(base, PreprocessOptions(seed=42))
