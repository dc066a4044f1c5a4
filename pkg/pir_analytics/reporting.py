"""
Output formatting
Renders results as display tables, CSV or JSON. Only the table format rounds.
"""

import json
import math
from typing import Iterable, List, Sequence

import pandas as pd

from .core import compute_pir
from .models import IndexResult, OutputFormat, Partition, SummaryTable, TrajectorySeries, ValidationReport

PHASE_LABELS = {"regular": "Regular season", "playoff": "Playoffs"}
SCOPE_LABELS = {"individual": "Individual", "joint": "Joint"}


def _json_value(v):
    if hasattr(v, "item"):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def format_frame(df: pd.DataFrame, fmt: OutputFormat, decimals: int = 4) -> str:
    if fmt is OutputFormat.CSV:
        return df.to_csv(index=False)
    if fmt is OutputFormat.JSON:
        records = [{k: _json_value(v) for k, v in row.items()} for row in df.to_dict(orient="records")]
        return json.dumps(records, indent=2) + "\n"
    if df.empty:
        return "(no rows)\n"
    return df.to_string(index=False, float_format=lambda v: f"{v:.{decimals}f}") + "\n"


def results_frame(results: Sequence[IndexResult]) -> pd.DataFrame:
    rows = [
        {
            "player": r.player,
            "season": r.season,
            "phase": r.phase.value,
            "index": r.kind.value,
            "value": r.value,
            "excluded": r.excluded,
            "degenerate": r.degenerate,
        }
        for r in results
    ]
    return pd.DataFrame(rows, columns=["player", "season", "phase", "index", "value", "excluded", "degenerate"])


def format_results(results: Sequence[IndexResult], fmt: OutputFormat, decimals: int = 4) -> str:
    return format_frame(results_frame(results), fmt, decimals)


def summary_long_frame(table: SummaryTable) -> pd.DataFrame:
    """One row per (phase, scope, player) cell, full precision"""
    rows = []
    for row in table.rows:
        for player, cell in row.cells.items():
            rows.append({
                "phase": row.phase.value,
                "scope": row.scope.value,
                "player": player,
                "mean_with_outliers": cell.mean_with_outliers,
                "mean_without_outliers": cell.mean_without_outliers,
                "n_records": cell.n_records,
                "n_kept": cell.n_kept,
            })
    return pd.DataFrame(rows)


def summary_grid(table: SummaryTable, decimals: int = 4) -> pd.DataFrame:
    """Rows are phase x scope, columns are players, cells 'mean (mean without outliers)'"""
    data = []
    for row in table.rows:
        line = {"": f"{PHASE_LABELS[row.phase.value]} / {SCOPE_LABELS[row.scope.value]}"}
        for player in table.players:
            cell = row.cells.get(player)
            if cell is None:
                line[player] = "-"
            elif table.policy_label == "none":
                line[player] = f"{cell.mean_with_outliers:.{decimals}f}"
            else:
                line[player] = f"{cell.mean_with_outliers:.{decimals}f} ({cell.mean_without_outliers:.{decimals}f})"
        data.append(line)
    return pd.DataFrame(data, columns=[""] + list(table.players))


def format_summary(table: SummaryTable, fmt: OutputFormat, decimals: int = 4) -> str:
    if fmt is not OutputFormat.TABLE:
        return format_frame(summary_long_frame(table), fmt, decimals)
    header = f"{table.kind.label} means by player (exclusions: {table.policy_label})"
    if table.weights is not None and table.weights.a != (1.0,) * len(table.weights.a):
        header += f"\nweights: {', '.join(f'{w:g}' for w in table.weights.a)}"
    return header + "\n" + summary_grid(table, decimals).to_string(index=False) + "\n"


def trajectory_frame(series: TrajectorySeries) -> pd.DataFrame:
    return pd.DataFrame(
        [{"season": p.season, "value": p.value, "excluded": p.excluded} for p in series.points],
        columns=["season", "value", "excluded"],
    )


def format_trajectory(series: TrajectorySeries, fmt: OutputFormat, decimals: int = 4) -> str:
    body = format_frame(trajectory_frame(series), fmt, decimals)
    if fmt is not OutputFormat.TABLE:
        return body
    return f"{series.player} {series.kind.label} ({series.phase.value}, {series.scope.value})\n" + body


def partition_frame(partitions: Iterable[Partition]) -> pd.DataFrame:
    rows = []
    for partition in partitions:
        for s in partition.excluded:
            rows.append({"player": s.player, "season": s.season, "phase": s.phase.value,
                         "games": s.games, "pir": compute_pir(s)})
    return pd.DataFrame(rows, columns=["player", "season", "phase", "games", "pir"])


def format_exclusions(partitions: Iterable[Partition], fmt: OutputFormat, decimals: int = 4) -> str:
    return format_frame(partition_frame(partitions), fmt, decimals)


def format_validation(report: ValidationReport) -> List[str]:
    """Lines for stdout; diagnostics go first"""
    lines = []
    for d in report.diagnostics:
        where = f"row {d.row}: " if d.row is not None else ""
        lines.append(f"{where}{d.message}")
    for player, counts in report.counts.items():
        parts = ", ".join(f"{phase} {n}" for phase, n in sorted(counts.items()))
        lines.append(f"{player}: {parts}")
    status = "ok" if report.ok else f"{len(report.diagnostics)} problem(s)"
    lines.append(f"{report.path}: {report.records} record(s), {status}")
    return lines
