"""Finite-time distributed hypothesis testing simulator.

Thin wrapper over the C++ core: process-of-elimination protocols (poe,
poe-fc), the min-rule baseline, and a deterministic synchronous round
engine. See the project README for the file formats and the CLI.
"""

from ._core import (
    BatchAggregates,
    ConfigError,
    DirectedGraph,
    HypothesisModel,
    RunRecord,
    __version__,
    argmax_indicator,
    bayes_update,
    check_global_identifiability,
    finite_time_wrap,
    generate_sample_path,
    indistinguishable_set,
    intersect,
    kl_divergence,
    make_schedule,
    normalize_candidates,
    round_beliefs,
    run,
    run_config,
    run_config_batch,
)

__all__ = [
    "BatchAggregates",
    "ConfigError",
    "DirectedGraph",
    "HypothesisModel",
    "RunRecord",
    "__version__",
    "argmax_indicator",
    "bayes_update",
    "check_global_identifiability",
    "finite_time_wrap",
    "generate_sample_path",
    "indistinguishable_set",
    "intersect",
    "kl_divergence",
    "make_schedule",
    "normalize_candidates",
    "round_beliefs",
    "run",
    "run_config",
    "run_config_batch",
]
