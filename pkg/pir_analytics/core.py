"""
Index arithmetic
Min-Max rescaling and the PIR, PIR_REES and PIR_POND indices
"""

import math
from typing import Collection, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from .errors import IncompleteContextError, InvalidValueError, InvertedBoundsError, NoDataError
from .models import (
    NEGATIVE_VARIABLES,
    PIR_KEY,
    POSITIVE_VARIABLES,
    VARIABLES,
    IndexKind,
    IndexResult,
    RecordKey,
    RescaleContext,
    StatLine,
    Variable,
    WeightProfile,
)

logger = structlog.get_logger()

DEFAULT_DEGENERATE_VALUE = 0.5


def rescale_with_flag(x: float, lower: float, upper: float,
                      degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> Tuple[float, bool]:
    """Rescale x onto [0, 1]; the flag is set when the range is empty"""
    for v in (x, lower, upper):
        if v is None or not math.isfinite(v):
            raise InvalidValueError(v)
    if lower > upper:
        raise InvertedBoundsError(lower, upper)
    if upper == lower:
        return degenerate_value, True
    clamped = min(max(x, lower), upper)
    return (clamped - lower) / (upper - lower), False


def minmax_rescale(x: float, lower: float, upper: float,
                   degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> float:
    """(clamp(x) - min) / (max - min)"""
    return rescale_with_flag(x, lower, upper, degenerate_value)[0]


def rescale_series(values: Sequence[float],
                   degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> List[float]:
    """Rescale a series against its own min and max"""
    if len(values) == 0:
        raise NoDataError()
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidValueError("non-finite value in series")
    lower, upper = float(arr.min()), float(arr.max())
    return [minmax_rescale(float(x), lower, upper, degenerate_value) for x in arr]


def compute_pir(s: StatLine) -> float:
    """Positive actions minus negative actions"""
    return sum(s.value(v) for v in POSITIVE_VARIABLES) - sum(s.value(v) for v in NEGATIVE_VARIABLES)


def rescale_index(pir_values: Sequence[float], ctx: RescaleContext,
                  degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> List[float]:
    """Whole-index rescaling; individual or joint depending on the context"""
    if len(pir_values) == 0:
        raise NoDataError()
    if PIR_KEY not in ctx.bounds:
        raise IncompleteContextError([PIR_KEY])
    b = ctx.bounds[PIR_KEY]
    if b.degenerate:
        logger.warning("Degenerate PIR bounds", scope=ctx.scope.value, player=ctx.player, value=b.lower)
    return [minmax_rescale(x, b.lower, b.upper, degenerate_value) for x in pir_values]


def _require_variables(ctx: RescaleContext) -> None:
    missing = [v.value for v in VARIABLES if v.value not in ctx.bounds]
    if missing:
        raise IncompleteContextError(missing)


def rescale_variables(s: StatLine, ctx: RescaleContext,
                      degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> Dict[Variable, Tuple[float, bool]]:
    """Rescaled value and degenerate flag of every variable of a stat line"""
    _require_variables(ctx)
    out = {}
    for v in VARIABLES:
        b = ctx.bounds[v.value]
        out[v] = rescale_with_flag(s.value(v), b.lower, b.upper, degenerate_value)
    return out


def _effective_weights(w: WeightProfile, ctx: RescaleContext, zero_constant: bool) -> WeightProfile:
    return w.effective(ctx.zeroed_keys) if zero_constant else w


def compute_pir_rees(s: StatLine, ctx: RescaleContext, w: Optional[WeightProfile] = None,
                     degenerate_value: float = DEFAULT_DEGENERATE_VALUE,
                     zero_constant: bool = True, excluded: bool = False) -> IndexResult:
    """Weighted sum of rescaled variables, positives added and negatives subtracted"""
    w = w or WeightProfile.unit()
    rescaled = rescale_variables(s, ctx, degenerate_value)
    eff = _effective_weights(w, ctx, zero_constant)

    value = 0.0
    degenerate = False
    for v in VARIABLES:
        r, flag = rescaled[v]
        a = eff.weight(v)
        value += a * r if v in POSITIVE_VARIABLES else -a * r
        degenerate = degenerate or (flag and a > 0)

    return IndexResult(
        kind=IndexKind.PIR_REES, value=value, player=s.player, season=s.season, phase=s.phase,
        bounds=(eff.a_min, eff.a_max), excluded=excluded, degenerate=degenerate, context=ctx,
    )


def compute_pir_pond(s: StatLine, ctx: RescaleContext,
                     degenerate_value: float = DEFAULT_DEGENERATE_VALUE,
                     zero_constant: bool = True, excluded: bool = False) -> IndexResult:
    """PIR with every raw variable weighted by its own rescaled value"""
    rescaled = rescale_variables(s, ctx, degenerate_value)
    zeroed = ctx.zeroed_keys if zero_constant else frozenset()

    value = 0.0
    degenerate = False
    for v in VARIABLES:
        if v.value in zeroed:
            continue
        r, flag = rescaled[v]
        term = r * s.value(v)
        value += term if v in POSITIVE_VARIABLES else -term
        degenerate = degenerate or flag

    return IndexResult(
        kind=IndexKind.PIR_POND, value=value, player=s.player, season=s.season, phase=s.phase,
        excluded=excluded, degenerate=degenerate, context=ctx,
    )


def mean_variable_weights(records: Iterable[StatLine], ctx: RescaleContext,
                          excluded: Collection[RecordKey] = (),
                          degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> Dict[Variable, float]:
    """Average rescaled value of every variable over non-excluded records"""
    _require_variables(ctx)
    kept = [s for s in records if s.key not in excluded]
    if not kept:
        raise NoDataError()
    means = {}
    for v in VARIABLES:
        b = ctx.bounds[v.value]
        means[v] = float(np.mean([minmax_rescale(s.value(v), b.lower, b.upper, degenerate_value) for s in kept]))
    return means


def mean_point_weight(records: Iterable[StatLine], ctx: RescaleContext,
                      excluded: Collection[RecordKey] = (),
                      degenerate_value: float = DEFAULT_DEGENERATE_VALUE) -> float:
    """Average coefficient of points in PIR_POND"""
    if Variable.POINTS.value not in ctx.bounds:
        raise IncompleteContextError([Variable.POINTS.value])
    kept = [s for s in records if s.key not in excluded]
    if not kept:
        raise NoDataError()
    b = ctx.bounds[Variable.POINTS.value]
    return float(np.mean([minmax_rescale(s.points, b.lower, b.upper, degenerate_value) for s in kept]))


def rescale_rees_to_unit(value: float, w: WeightProfile) -> float:
    """Map a PIR_REES value from [a_MIN, a_MAX] onto [0, 1]"""
    return minmax_rescale(value, w.a_min, w.a_max)
