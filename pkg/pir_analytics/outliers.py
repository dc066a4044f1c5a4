"""
Outlier screening
Manual exclusion lists, box-and-whisker fences and exclusion-aware rescaling
"""

from collections import defaultdict
from importlib import resources
from pathlib import Path
from typing import Callable, Collection, Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, ValidationError

from .core import DEFAULT_DEGENERATE_VALUE, compute_pir, minmax_rescale
from .errors import ConfigError, NoDataError, SchemaError, UnknownExclusionError
from .models import PIR_KEY, OutlierMode, OutlierPolicy, Partition, Phase, RecordKey, StatLine, Variable

logger = structlog.get_logger()

KEY_COLUMNS = ("player", "season", "phase")
CURATED_EXCLUSIONS_FILE = "curated_exclusions.csv"


def detect_iqr(values: Sequence[float], multiplier: float = 1.5) -> Set[int]:
    """Indices of values outside [Q1 - k*IQR, Q3 + k*IQR]

    Quartiles use linear interpolation between order statistics.
    """
    if len(values) == 0:
        raise NoDataError()
    if not multiplier > 0:
        raise ConfigError("IQR multiplier must be > 0", "multiplier")
    arr = np.asarray(values, dtype=float)
    q1, q3 = np.percentile(arr, [25, 75])
    cut = multiplier * (q3 - q1)
    low, high = q1 - cut, q3 + cut
    return {int(i) for i in np.flatnonzero((arr < low) | (arr > high))}


def metric_getter(metric: str) -> Callable[[StatLine], float]:
    if metric == PIR_KEY:
        return compute_pir
    variable = Variable(metric)
    return lambda s: s.value(variable)


def apply_policy(records: Sequence[StatLine], policy: OutlierPolicy) -> Partition:
    """Split records into kept and excluded according to the policy"""
    if len(records) == 0:
        raise NoDataError()

    if policy.mode is OutlierMode.NONE:
        return Partition(kept=tuple(records))

    if policy.mode is OutlierMode.MANUAL:
        present = {s.key for s in records}
        wanted = set(policy.entries)
        unknown = [k for k in policy.entries if k not in present]
        if unknown:
            raise UnknownExclusionError([(k.player, k.season, k.phase.value) for k in unknown])
        excluded_keys = wanted
    else:
        # Fences are computed per player and phase so careers are screened against themselves
        getter = metric_getter(policy.metric)
        groups: Dict[Tuple[str, Phase], List[StatLine]] = defaultdict(list)
        for s in records:
            groups[(s.player, s.phase)].append(s)
        excluded_keys = set()
        for group in groups.values():
            flagged = detect_iqr([getter(s) for s in group], policy.multiplier)
            excluded_keys.update(group[i].key for i in flagged)

    kept = tuple(s for s in records if s.key not in excluded_keys)
    excluded = tuple(s for s in records if s.key in excluded_keys)
    logger.info("Applied outlier policy", policy=policy.label, kept=len(kept), excluded=len(excluded))
    return Partition(kept=kept, excluded=excluded)


def _normalize_columns(df: pd.DataFrame) -> pd.DataFrame:
    df.columns = [str(c).strip().lower() for c in df.columns]
    return df


def read_exclusions(source: Union[str, Path, object]) -> List[RecordKey]:
    """Exclusion keys from a CSV with player, season and phase columns"""
    try:
        df = _normalize_columns(pd.read_csv(source, dtype=str, keep_default_na=False))
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot parse as CSV ({e})", "exclusions") from e
    missing = [c for c in KEY_COLUMNS if c not in df.columns]
    if missing:
        raise SchemaError(missing)
    keys = []
    for i, row in enumerate(df.itertuples(index=False), start=2):
        try:
            keys.append(RecordKey(
                player=row.player.strip(), season=row.season.strip(), phase=row.phase.strip().lower(),
            ))
        except ValidationError as e:
            raise ConfigError(f"row {i}: {e.errors()[0]['msg']}", "exclusions") from e
    return keys


def load_exclusions(path: Union[str, Path]) -> OutlierPolicy:
    """Manual policy from an exclusion list file"""
    return OutlierPolicy.manual(read_exclusions(Path(path)))


def curated_exclusions() -> OutlierPolicy:
    """Shipped list of anomalous fixture seasons (short, comeback and debut seasons)"""
    with resources.files("pir_analytics.data").joinpath(CURATED_EXCLUSIONS_FILE).open("r", encoding="utf-8") as fh:
        return OutlierPolicy.manual(read_exclusions(fh))


class RescaledColumn(BaseModel):
    lower: float
    upper: float
    values: List[Optional[float]]
    kept_mean: float


def rescale_column(values: Sequence[float], excluded: Collection[int] = (), clamp: bool = True,
                   degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> RescaledColumn:
    """Rescale one series with bounds taken from its kept values

    Excluded values are clamped onto the kept range, or left as None when
    clamping is off. The mean only covers kept values.
    """
    kept = [x for i, x in enumerate(values) if i not in excluded]
    if not kept:
        raise NoDataError()
    lower, upper = min(kept), max(kept)
    rescaled: List[Optional[float]] = []
    for i, x in enumerate(values):
        if i in excluded and not clamp:
            rescaled.append(None)
        else:
            rescaled.append(minmax_rescale(x, lower, upper, degenerate_value))
    kept_values = [r for i, r in enumerate(rescaled) if i not in excluded]
    return RescaledColumn(lower=lower, upper=upper, values=rescaled, kept_mean=float(np.mean(kept_values)))
