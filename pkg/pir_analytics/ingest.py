"""
Dataset ingestion
Reads per-season, per-game stat lines from CSV into validated StatLine records
"""

import re
from collections import Counter, defaultdict
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
import structlog
from pydantic import BaseModel, ValidationError

from .errors import DatasetError, RowError, SchemaError
from .models import Diagnostic, Phase, StatLine, ValidationReport, season_start_year

logger = structlog.get_logger()

FIXTURE_FILE = "players_per_game.csv"
NUMBER_PATTERN = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

# Source column -> StatLine field, for columns copied as they are
DIRECT_COLUMNS = {
    "pts": "points",
    "trb": "rebounds",
    "ast": "assists",
    "stl": "steals",
    "blk": "blocks_made",
    "tov": "turnovers",
    "pf": "fouls_committed",
}


class DatasetSchema(BaseModel):
    required: Tuple[str, ...] = (
        "player", "season", "phase", "games",
        "pts", "trb", "ast", "stl", "blk", "tov", "pf",
        "fga", "fg", "fta", "ft",
    )
    optional: Dict[str, float] = {"fouls_drawn": 0.0, "blocks_received": 0.0}

    def missing_columns(self, columns: Sequence[str]) -> List[str]:
        present = {str(c).strip().lower() for c in columns}
        return [c for c in self.required if c not in present]

    @property
    def columns(self) -> List[str]:
        return list(self.required) + list(self.optional)


def _parse_number(raw: str, column: str, row: int) -> float:
    text = raw.strip()
    if not NUMBER_PATTERN.match(text):
        raise RowError(row, f"column {column!r}: {raw!r} is not a number (use '.' as decimal mark)")
    return float(text)


def _parse_phase(raw: str, row: int) -> Phase:
    try:
        return Phase(raw.strip().lower())
    except ValueError:
        raise RowError(row, f"phase {raw!r} must be 'regular' or 'playoff'") from None


def _parse_row(values: Dict[str, str], row: int, schema: DatasetSchema) -> StatLine:
    season = values["season"].strip()
    try:
        season_start_year(season)
    except ValueError as e:
        raise RowError(row, str(e)) from None

    games = _parse_number(values["games"], "games", row)
    if games != int(games):
        raise RowError(row, f"games {values['games']!r} is not a whole number")

    fields = {
        "player": values["player"].strip(),
        "season": season,
        "phase": _parse_phase(values["phase"], row),
        "games": int(games),
    }
    for column, field in DIRECT_COLUMNS.items():
        fields[field] = _parse_number(values[column], column, row)
    for column, default in schema.optional.items():
        raw = values.get(column, "")
        fields[column] = _parse_number(raw, column, row) if raw.strip() else default

    # Misses are derived from attempts and makes
    for attempts, makes, missed, made in (("fga", "fg", "fg_missed", "fg_made"), ("fta", "ft", "ft_missed", "ft_made")):
        a = _parse_number(values[attempts], attempts, row)
        m = _parse_number(values[makes], makes, row)
        if m > a:
            raise RowError(row, f"{makes} ({m}) exceeds {attempts} ({a})")
        fields[missed] = round(a - m, 10)
        fields[made] = m

    try:
        return StatLine(**fields)
    except ValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(p) for p in err["loc"])
        raise RowError(row, f"{where}: {err['msg']}") from None


def _read_frame(source) -> pd.DataFrame:
    try:
        df = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DatasetError(f"{source}: cannot parse as CSV ({e})") from e
    df.columns = [str(c).strip().lower() for c in df.columns]
    return df


def _parse_frame(df: pd.DataFrame, schema: DatasetSchema) -> Tuple[List[StatLine], List[Diagnostic]]:
    records: List[StatLine] = []
    diagnostics: List[Diagnostic] = []
    # Header is row 1
    for row, values in enumerate(df.to_dict(orient="records"), start=2):
        try:
            records.append(_parse_row(values, row, schema))
        except RowError as e:
            diagnostics.append(Diagnostic(row=e.row, message=e.detail))

    counts = Counter(s.key for s in records)
    for key, n in counts.items():
        if n > 1:
            diagnostics.append(Diagnostic(message=f"duplicate record {key} ({n} rows)"))
    return records, diagnostics


def load_dataset(path: Union[str, Path], schema: Optional[DatasetSchema] = None) -> List[StatLine]:
    """Load and validate a dataset; any invalid row aborts the load"""
    schema = schema or DatasetSchema()
    df = _read_frame(path)
    missing = schema.missing_columns(df.columns)
    if missing:
        raise SchemaError(missing)

    records, diagnostics = _parse_frame(df, schema)
    row_problems = [d for d in diagnostics if d.row is not None]
    if row_problems:
        for d in row_problems:
            logger.warning("Rejected row", path=str(path), row=d.row, reason=d.message)
        first = row_problems[0]
        more = f" (+{len(row_problems) - 1} more)" if len(row_problems) > 1 else ""
        raise RowError(first.row, first.message + more)
    if diagnostics:
        raise DatasetError("; ".join(d.message for d in diagnostics))
    if not records:
        raise DatasetError(f"{path}: no data rows")

    logger.info("Loaded dataset", path=str(path), records=len(records))
    return records


def validate_dataset(path: Union[str, Path], schema: Optional[DatasetSchema] = None) -> ValidationReport:
    """Check a dataset and collect every diagnostic instead of raising"""
    schema = schema or DatasetSchema()
    try:
        df = _read_frame(path)
    except (OSError, DatasetError) as e:
        return ValidationReport(path=str(path), records=0, diagnostics=[Diagnostic(message=str(e))])

    missing = schema.missing_columns(df.columns)
    if missing:
        return ValidationReport(path=str(path), records=0, diagnostics=[Diagnostic(message=str(SchemaError(missing)))])

    records, diagnostics = _parse_frame(df, schema)
    counts: Dict[str, Dict[str, int]] = defaultdict(dict)
    for s in records:
        counts[s.player][s.phase.value] = counts[s.player].get(s.phase.value, 0) + 1
    return ValidationReport(path=str(path), records=len(records), counts=dict(counts), diagnostics=diagnostics)


def records_frame(records: Sequence[StatLine]) -> pd.DataFrame:
    """Records in the input column layout"""
    rows = []
    for s in records:
        rows.append({
            "player": s.player,
            "season": s.season,
            "phase": s.phase.value,
            "games": s.games,
            **{column: getattr(s, field) for column, field in DIRECT_COLUMNS.items()},
            "fga": round(s.fg_missed + s.fg_made, 6),
            "fg": s.fg_made,
            "fta": round(s.ft_missed + s.ft_made, 6),
            "ft": s.ft_made,
            "fouls_drawn": s.fouls_drawn,
            "blocks_received": s.blocks_received,
        })
    return pd.DataFrame(rows, columns=DatasetSchema().columns)


def dump_dataset(records: Sequence[StatLine], path: Union[str, Path]) -> None:
    """Write records back in the input format"""
    records_frame(records).to_csv(path, index=False)
    logger.info("Wrote dataset", path=str(path), records=len(records))


def fixture_path() -> Path:
    return Path(str(resources.files("pir_analytics.data").joinpath(FIXTURE_FILE)))


def load_fixture() -> List[StatLine]:
    """The shipped four-player dataset"""
    return load_dataset(fixture_path())
