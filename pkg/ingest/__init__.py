"""
Ingestion of cultural indices and socio-economic indicators into country profiles.
"""

from ingest.countries import CountryCode, validate_country_code
from ingest.cultural import parse_cultural_csv, write_cultural_csv
from ingest.indicators import DEFAULT_INDICATORS, Category, IndicatorSpec
from ingest.models import CountryProfile, CulturalIndices, IndicatorObservation, Provenance
from ingest.profiles import (
    ImputationPolicy,
    build_profiles,
    filter_most_recent,
    impute,
    join_profiles,
    load_profiles,
    save_profiles,
)
from ingest.socioeconomic import parse_socioeconomic_csv, write_socioeconomic_csv

__all__ = [
    "CountryCode",
    "validate_country_code",
    "parse_cultural_csv",
    "write_cultural_csv",
    "DEFAULT_INDICATORS",
    "Category",
    "IndicatorSpec",
    "CountryProfile",
    "CulturalIndices",
    "IndicatorObservation",
    "Provenance",
    "ImputationPolicy",
    "build_profiles",
    "filter_most_recent",
    "impute",
    "join_profiles",
    "load_profiles",
    "save_profiles",
    "parse_socioeconomic_csv",
    "write_socioeconomic_csv",
]
