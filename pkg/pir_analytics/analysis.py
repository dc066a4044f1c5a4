"""
Analysis layer
Builds rescaling contexts and turns per-record index values into the
summary tables, rankings and trajectories used for reporting
"""

import math
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from .config import Settings, get_settings
from .core import compute_pir, compute_pir_pond, compute_pir_rees, mean_point_weight, minmax_rescale
from .errors import NoDataError, PIRError
from .models import (
    PIR_KEY,
    VARIABLES,
    Bounds,
    IndexKind,
    IndexResult,
    OutlierPolicy,
    Partition,
    Phase,
    RescaleContext,
    Scope,
    StatLine,
    SummaryCell,
    SummaryRow,
    SummaryTable,
    Target,
    TrajectoryPoint,
    TrajectorySeries,
    WeightProfile,
    season_start_year,
)
from .outliers import apply_policy

logger = structlog.get_logger()

TARGET_FOR_KIND = {
    IndexKind.PIR_RESCALED: Target.WHOLE_INDEX,
    IndexKind.PIR_REES: Target.PER_VARIABLE,
    IndexKind.PIR_POND: Target.PER_VARIABLE,
}


def players_of(records: Iterable[StatLine]) -> List[str]:
    """Player ids in order of first appearance"""
    return list(dict.fromkeys(s.player for s in records))


def phases_of(records: Iterable[StatLine]) -> List[Phase]:
    present = {s.phase for s in records}
    return [p for p in Phase if p in present]


def _bounds(values: Sequence[float]) -> Bounds:
    arr = np.asarray(values, dtype=float)
    return Bounds(lower=float(arr.min()), upper=float(arr.max()))


def context_from_kept(kept: Sequence[StatLine], scope: Scope, target: Target,
                      player: Optional[str] = None, phase: Optional[Phase] = None,
                      policy_label: str = "none") -> RescaleContext:
    """Exact min/max of the given records"""
    if not kept:
        raise NoDataError("no data in scope")
    if target is Target.WHOLE_INDEX:
        bounds = {PIR_KEY: _bounds([compute_pir(s) for s in kept])}
    else:
        bounds = {v.value: _bounds([s.value(v) for s in kept]) for v in VARIABLES}

    ctx = RescaleContext(
        scope=scope, target=target, bounds=bounds, player=player, phase=phase,
        policy_label=policy_label, n_records=len(kept),
    )
    flagged = sorted(ctx.degenerate_keys - ctx.zeroed_keys)
    if flagged:
        logger.warning("Degenerate bounds in context", scope=scope.value, player=player, keys=flagged)
    return ctx


def build_context(records: Sequence[StatLine], scope: Scope, target: Target,
                  policy: Optional[OutlierPolicy] = None, player: Optional[str] = None,
                  phase: Optional[Phase] = None) -> RescaleContext:
    """Rescaling context from the kept records in scope

    Individual scope takes the bounds from one player's records, joint scope
    from every player's records. Exclusions are resolved against the whole
    record set before the scope is narrowed.
    """
    policy = policy or OutlierPolicy.none()
    if scope is Scope.INDIVIDUAL and player is None:
        candidates = players_of(records)
        if len(candidates) != 1:
            raise PIRError("individual scope needs a player")
        player = candidates[0]

    partition = apply_policy(records, policy) if records else Partition(kept=())
    kept = [
        s for s in partition.kept
        if (phase is None or s.phase is phase) and (scope is Scope.JOINT or s.player == player)
    ]
    ctx = context_from_kept(kept, scope, target, player if scope is Scope.INDIVIDUAL else None,
                            phase, policy.label)
    logger.debug("Built context", scope=scope.value, target=target.value, player=player, records=len(kept))
    return ctx


def _index_value(s: StatLine, kind: IndexKind, ctx: Optional[RescaleContext], weights: WeightProfile,
                 settings: Settings, excluded: bool) -> IndexResult:
    if kind is IndexKind.PIR:
        return IndexResult(kind=kind, value=compute_pir(s), player=s.player, season=s.season,
                           phase=s.phase, excluded=excluded)
    if kind is IndexKind.PIR_RESCALED:
        b = ctx.bounds[PIR_KEY]
        return IndexResult(
            kind=kind, value=minmax_rescale(compute_pir(s), b.lower, b.upper, settings.degenerate_value),
            player=s.player, season=s.season, phase=s.phase, bounds=(0.0, 1.0),
            excluded=excluded, degenerate=b.degenerate, context=ctx,
        )
    if kind is IndexKind.PIR_REES:
        return compute_pir_rees(s, ctx, weights, settings.degenerate_value,
                                settings.zero_weight_constant_variables, excluded)
    return compute_pir_pond(s, ctx, settings.degenerate_value,
                            settings.zero_weight_constant_variables, excluded)


def compute_indices(records: Sequence[StatLine], kind: IndexKind, scope: Scope = Scope.JOINT,
                    policy: Optional[OutlierPolicy] = None, weights: Optional[WeightProfile] = None,
                    settings: Optional[Settings] = None) -> List[IndexResult]:
    """Index value of every record, in input order

    Contexts are built per phase (and per player for individual scope) from
    kept records. Excluded records are clamped into those contexts when the
    policy allows it and left out otherwise.
    """
    if not records:
        raise NoDataError()
    policy = policy or OutlierPolicy.none()
    weights = weights or WeightProfile.unit()
    settings = settings or get_settings()

    partition = apply_policy(records, policy)
    excluded_keys = partition.excluded_keys

    contexts: Dict[Tuple[Phase, Optional[str]], RescaleContext] = {}
    if kind is not IndexKind.PIR:
        target = TARGET_FOR_KIND[kind]
        grouped: Dict[Tuple[Phase, Optional[str]], List[StatLine]] = defaultdict(list)
        for s in partition.kept:
            grouped[(s.phase, s.player if scope is Scope.INDIVIDUAL else None)].append(s)
        for (phase, player), kept in grouped.items():
            contexts[(phase, player)] = context_from_kept(kept, scope, target, player, phase, policy.label)

    results = []
    for s in records:
        excluded = s.key in excluded_keys
        if excluded and not policy.clamp_excluded:
            continue
        ctx = None
        if kind is not IndexKind.PIR:
            ctx = contexts.get((s.phase, s.player if scope is Scope.INDIVIDUAL else None))
            if ctx is None:
                # Every record of this player and phase was excluded
                continue
        results.append(_index_value(s, kind, ctx, weights, settings, excluded))
    return results


def _kept_values(records: Sequence[StatLine], kind: IndexKind, scope: Scope, policy: OutlierPolicy,
                 weights: WeightProfile, settings: Settings) -> Dict[str, List[float]]:
    values: Dict[str, List[float]] = defaultdict(list)
    for r in compute_indices(records, kind, scope, policy, weights, settings):
        if not r.excluded:
            values[r.player].append(r.value)
    return values


def summarize(records: Sequence[StatLine], kind: IndexKind,
              scopes: Sequence[Scope] = (Scope.INDIVIDUAL, Scope.JOINT),
              policy: Optional[OutlierPolicy] = None, weights: Optional[WeightProfile] = None,
              settings: Optional[Settings] = None) -> SummaryTable:
    """Per player means of an index, with and without the policy's exclusions"""
    if not records:
        raise NoDataError()
    policy = policy or OutlierPolicy.none()
    weights = weights or WeightProfile.unit()
    settings = settings or get_settings()
    players = players_of(records)
    # Unknown exclusion entries are reported against the whole record set
    apply_policy(records, policy)

    rows = []
    for phase in phases_of(records):
        in_phase = [s for s in records if s.phase is phase]
        phase_policy = policy.for_phases([phase])
        for scope in scopes:
            with_outliers = _kept_values(in_phase, kind, scope, OutlierPolicy.none(), weights, settings)
            without_outliers = _kept_values(in_phase, kind, scope, phase_policy, weights, settings)
            cells = {}
            for player in players:
                if player not in with_outliers:
                    continue
                kept = without_outliers.get(player, [])
                cells[player] = SummaryCell(
                    mean_with_outliers=float(np.mean(with_outliers[player])),
                    mean_without_outliers=float(np.mean(kept)) if kept else float("nan"),
                    n_records=len(with_outliers[player]),
                    n_kept=len(kept),
                )
            rows.append(SummaryRow(phase=phase, scope=scope, cells=cells))

    logger.info("Built summary table", kind=kind.value, policy=policy.label, rows=len(rows))
    return SummaryTable(
        kind=kind, players=players, rows=rows, policy_label=policy.label,
        weights=weights if kind is IndexKind.PIR_REES else None,
    )


def rank_players(table: SummaryTable, phase: Phase, scope: Scope,
                 without_outliers: bool = False) -> List[Tuple[str, float]]:
    """Players by descending mean; ties go to the lexicographically smaller id, NaN means last"""
    try:
        row = table.row(phase, scope)
    except KeyError as e:
        raise PIRError(str(e.args[0])) from None
    entries = [
        (player, cell.mean_without_outliers if without_outliers else cell.mean_with_outliers)
        for player, cell in row.cells.items()
    ]
    return sorted(entries, key=lambda e: (math.isnan(e[1]), 0.0 if math.isnan(e[1]) else -e[1], e[0]))


def trajectory(records: Sequence[StatLine], player: str, phase: Phase, kind: IndexKind,
               scope: Scope = Scope.INDIVIDUAL, policy: Optional[OutlierPolicy] = None,
               weights: Optional[WeightProfile] = None, settings: Optional[Settings] = None) -> TrajectorySeries:
    """Season by season index values of one player"""
    in_phase = [s for s in records if s.phase is phase]
    if not any(s.player == player for s in in_phase):
        raise NoDataError(f"no data for {player} ({phase.value})")

    policy = (policy or OutlierPolicy.none()).for_phases([phase])
    results = [r for r in compute_indices(in_phase, kind, scope, policy, weights, settings) if r.player == player]
    if not results:
        raise NoDataError(f"no kept data for {player} ({phase.value})")
    results.sort(key=lambda r: season_start_year(r.season))

    lower = upper = None
    if kind is IndexKind.PIR_RESCALED:
        lower, upper = 0.0, 1.0
    elif kind is IndexKind.PIR_REES:
        lower, upper = results[0].bounds

    return TrajectorySeries(
        player=player, phase=phase, kind=kind, scope=scope,
        points=[TrajectoryPoint(season=r.season, value=r.value, excluded=r.excluded) for r in results],
        lower=lower, upper=upper,
    )


def point_weights(records: Sequence[StatLine], phase: Phase, scope: Scope = Scope.JOINT,
                  policy: Optional[OutlierPolicy] = None,
                  settings: Optional[Settings] = None) -> Dict[str, float]:
    """Mean PIR_POND coefficient of points for every player"""
    settings = settings or get_settings()
    policy = (policy or OutlierPolicy.none()).for_phases([phase])
    in_phase = [s for s in records if s.phase is phase]
    partition = apply_policy(in_phase, policy)
    joint = build_context(in_phase, Scope.JOINT, Target.PER_VARIABLE, policy) if scope is Scope.JOINT else None
    weights = {}
    for player in players_of(in_phase):
        ctx = joint if joint is not None else build_context(
            in_phase, Scope.INDIVIDUAL, Target.PER_VARIABLE, policy, player=player)
        own = [s for s in in_phase if s.player == player]
        weights[player] = mean_point_weight(own, ctx, partition.excluded_keys, settings.degenerate_value)
    return weights
