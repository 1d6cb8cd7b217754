"""Distributed multichannel active noise control simulator."""

from ._core import (
    Config,
    DancError,
    consensus_spread,
    free_field_ir,
    instrumented_count,
    normalized_residual_db,
    op_count,
    oracle,
    preset_names,
    reference_counts,
    reference_signal,
    relative_distance,
    run_experiment,
)

ALGORITHMS = ("cfxlms", "dcfxlms", "mdfxlms", "bdfxlms_bc")

__all__ = [
    "ALGORITHMS",
    "Config",
    "DancError",
    "consensus_spread",
    "free_field_ir",
    "instrumented_count",
    "normalized_residual_db",
    "op_count",
    "oracle",
    "preset_names",
    "reference_counts",
    "reference_signal",
    "relative_distance",
    "run_experiment",
]
