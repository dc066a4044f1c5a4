"""
PIR Analytics
Basketball performance indices (PIR, PIR_REES, PIR_POND) with Min-Max rescaling
"""

__version__ = "1.0.0"

from .analysis import build_context, compute_indices, point_weights, rank_players, summarize, trajectory
from .core import (
    compute_pir,
    compute_pir_pond,
    compute_pir_rees,
    mean_point_weight,
    mean_variable_weights,
    minmax_rescale,
    rescale_index,
    rescale_rees_to_unit,
)
from .errors import PIRError
from .ingest import load_dataset, load_fixture, validate_dataset
from .models import IndexKind, OutlierPolicy, Phase, Scope, StatLine, Target, Variable, WeightProfile
from .outliers import apply_policy, curated_exclusions, detect_iqr

__all__ = [
    "__version__",
    "IndexKind",
    "OutlierPolicy",
    "PIRError",
    "Phase",
    "Scope",
    "StatLine",
    "Target",
    "Variable",
    "WeightProfile",
    "apply_policy",
    "build_context",
    "compute_indices",
    "compute_pir",
    "compute_pir_pond",
    "compute_pir_rees",
    "detect_iqr",
    "load_dataset",
    "load_fixture",
    "mean_point_weight",
    "mean_variable_weights",
    "minmax_rescale",
    "curated_exclusions",
    "point_weights",
    "rank_players",
    "rescale_index",
    "rescale_rees_to_unit",
    "summarize",
    "trajectory",
    "validate_dataset",
]
