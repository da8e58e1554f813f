"""
Synthetic subscriber aggregates and socio-economic context.
"""

from synthgen.catalog import Plan, PlanCatalog, default_catalog, load_catalog, save_catalog
from synthgen.config import SynthConfig, load_synth_config, save_synth_config
from synthgen.context import CATEGORY_FILES, generate_context, write_context
from synthgen.generator import (
    MODELING_COLUMNS,
    SUBSCRIBER_COLUMNS,
    SubscriberAggregate,
    generate,
    read_aggregates_csv,
    read_ground_truth_csv,
    write_aggregates_csv,
    write_ground_truth_csv,
)

__all__ = [
    "Plan",
    "PlanCatalog",
    "default_catalog",
    "load_catalog",
    "save_catalog",
    "SynthConfig",
    "load_synth_config",
    "save_synth_config",
    "CATEGORY_FILES",
    "generate_context",
    "write_context",
    "MODELING_COLUMNS",
    "SUBSCRIBER_COLUMNS",
    "SubscriberAggregate",
    "generate",
    "read_aggregates_csv",
    "read_ground_truth_csv",
    "write_aggregates_csv",
    "write_ground_truth_csv",
]
