"""
Pydantic models for PIR Analytics
Domain types shared by the index, outlier, ingestion and analysis modules
"""

import math
import re
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SEASON_PATTERN = re.compile(r"^(\d{4})-(\d{2})$")
PIR_KEY = "pir"


class Phase(str, Enum):
    REGULAR = "regular"
    PLAYOFF = "playoff"


class PhaseFilter(str, Enum):
    REGULAR = "regular"
    PLAYOFF = "playoff"
    BOTH = "both"

    @property
    def phases(self) -> List[Phase]:
        if self is PhaseFilter.BOTH:
            return [Phase.REGULAR, Phase.PLAYOFF]
        return [Phase(self.value)]


class Scope(str, Enum):
    INDIVIDUAL = "individual"
    JOINT = "joint"


class Target(str, Enum):
    PER_VARIABLE = "per_variable"
    WHOLE_INDEX = "whole_index"


class IndexKind(str, Enum):
    PIR = "pir"
    PIR_RESCALED = "pir_rescaled"
    PIR_REES = "pir_rees"
    PIR_POND = "pir_pond"

    @property
    def label(self) -> str:
        return {
            IndexKind.PIR: "PIR",
            IndexKind.PIR_RESCALED: "PIR (rescaled)",
            IndexKind.PIR_REES: "PIR_REES",
            IndexKind.PIR_POND: "PIR_POND",
        }[self]


class Variable(str, Enum):
    """The eleven PIR statistics, in index order"""

    POINTS = "points"
    REBOUNDS = "rebounds"
    ASSISTS = "assists"
    STEALS = "steals"
    BLOCKS_MADE = "blocks_made"
    FOULS_DRAWN = "fouls_drawn"
    FG_MISSED = "fg_missed"
    FT_MISSED = "ft_missed"
    TURNOVERS = "turnovers"
    BLOCKS_RECEIVED = "blocks_received"
    FOULS_COMMITTED = "fouls_committed"

    @property
    def is_positive(self) -> bool:
        return self in POSITIVE_VARIABLES


VARIABLES: Tuple[Variable, ...] = tuple(Variable)
POSITIVE_VARIABLES: Tuple[Variable, ...] = VARIABLES[:6]
NEGATIVE_VARIABLES: Tuple[Variable, ...] = VARIABLES[6:]


def season_start_year(label: str) -> int:
    """Starting year of a season label such as '1988-89'"""
    match = SEASON_PATTERN.match(label)
    if not match:
        raise ValueError(f"season label {label!r} does not match YYYY-YY")
    return int(match.group(1))


class RecordKey(BaseModel):
    model_config = ConfigDict(frozen=True)

    player: str = Field(..., min_length=1)
    season: str
    phase: Phase

    @field_validator("season")
    @classmethod
    def validate_season(cls, v: str) -> str:
        season_start_year(v)
        return v

    def __str__(self) -> str:
        return f"{self.player} {self.season} {self.phase.value}"


class StatLine(BaseModel):
    """One player-season-phase record; statistics are per-game averages"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    player: str = Field(..., min_length=1)
    season: str
    phase: Phase
    games: int = Field(..., ge=1)

    points: float = Field(0.0, ge=0.0)
    rebounds: float = Field(0.0, ge=0.0)
    assists: float = Field(0.0, ge=0.0)
    steals: float = Field(0.0, ge=0.0)
    blocks_made: float = Field(0.0, ge=0.0)
    fouls_drawn: float = Field(0.0, ge=0.0)
    fg_missed: float = Field(0.0, ge=0.0)
    ft_missed: float = Field(0.0, ge=0.0)
    turnovers: float = Field(0.0, ge=0.0)
    blocks_received: float = Field(0.0, ge=0.0)
    fouls_committed: float = Field(0.0, ge=0.0)

    # Makes are kept only so a loaded dataset can be written back unchanged
    fg_made: float = Field(0.0, ge=0.0)
    ft_made: float = Field(0.0, ge=0.0)

    @field_validator("season")
    @classmethod
    def validate_season(cls, v: str) -> str:
        season_start_year(v)
        return v

    @property
    def key(self) -> RecordKey:
        return RecordKey(player=self.player, season=self.season, phase=self.phase)

    @property
    def start_year(self) -> int:
        return season_start_year(self.season)

    def value(self, variable: Variable) -> float:
        return getattr(self, variable.value)


class Bounds(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    lower: float
    upper: float

    @model_validator(mode="after")
    def check_order(self) -> "Bounds":
        if self.lower > self.upper:
            raise ValueError(f"inverted bounds: {self.lower} > {self.upper}")
        return self

    @property
    def span(self) -> float:
        return self.upper - self.lower

    @property
    def degenerate(self) -> bool:
        return self.upper == self.lower


class RescaleContext(BaseModel):
    """Min/max reference bounds for one rescaling scope"""

    model_config = ConfigDict(frozen=True)

    scope: Scope
    target: Target
    bounds: Dict[str, Bounds]
    player: Optional[str] = None
    phase: Optional[Phase] = None
    policy_label: str = "none"
    n_records: int = 0

    @model_validator(mode="after")
    def check_player(self) -> "RescaleContext":
        if self.scope is Scope.INDIVIDUAL and not self.player:
            raise ValueError("individual contexts need a player")
        return self

    @property
    def degenerate_keys(self) -> FrozenSet[str]:
        return frozenset(k for k, b in self.bounds.items() if b.degenerate)

    @property
    def zeroed_keys(self) -> FrozenSet[str]:
        """Keys whose reference data is identically zero"""
        return frozenset(k for k, b in self.bounds.items() if b.lower == 0.0 and b.upper == 0.0)


class WeightProfile(BaseModel):
    """Nonnegative weights a_1..a_11 of PIR_REES, in variable order"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    a: Tuple[float, ...] = Field(default=(1.0,) * 11)

    @field_validator("a")
    @classmethod
    def validate_weights(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(v) != len(VARIABLES):
            raise ValueError(f"expected {len(VARIABLES)} weights, got {len(v)}")
        if any(w < 0 or not math.isfinite(w) for w in v):
            raise ValueError("weights must be finite and nonnegative")
        return tuple(float(w) for w in v)

    @classmethod
    def unit(cls) -> "WeightProfile":
        return cls()

    @classmethod
    def from_string(cls, text: str) -> "WeightProfile":
        """Parse '1,1,...' (11 comma separated reals)"""
        parts = [p.strip() for p in text.replace("\n", ",").split(",") if p.strip()]
        try:
            values = tuple(float(p) for p in parts)
        except ValueError as e:
            raise ValueError(f"weights must be numbers: {e}") from e
        return cls(a=values)

    def weight(self, variable: Variable) -> float:
        return self.a[VARIABLES.index(variable)]

    @property
    def a_max(self) -> float:
        return sum(self.a[: len(POSITIVE_VARIABLES)])

    @property
    def a_min(self) -> float:
        return -sum(self.a[len(POSITIVE_VARIABLES):])

    def effective(self, zeroed: Iterable[str]) -> "WeightProfile":
        """Profile with the weights of zeroed variables set to 0"""
        zeroed = set(zeroed)
        return WeightProfile(a=tuple(0.0 if v.value in zeroed else w for v, w in zip(VARIABLES, self.a)))


class IndexResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: IndexKind
    value: float
    player: str
    season: str
    phase: Phase
    bounds: Optional[Tuple[float, float]] = None
    excluded: bool = False
    degenerate: bool = False
    context: Optional[RescaleContext] = Field(default=None, exclude=True, repr=False)


# Outlier models
class OutlierMode(str, Enum):
    NONE = "none"
    MANUAL = "manual"
    IQR = "iqr"


class OutlierPolicy(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: OutlierMode = OutlierMode.NONE
    entries: Tuple[RecordKey, ...] = ()
    multiplier: float = Field(1.5, gt=0.0)
    # Screened series for IQR mode: "pir" or a Variable value
    metric: str = PIR_KEY
    clamp_excluded: bool = True

    @model_validator(mode="after")
    def check_mode(self) -> "OutlierPolicy":
        if self.entries and self.mode is not OutlierMode.MANUAL:
            raise ValueError("exclusion entries are only valid in manual mode")
        if self.metric != PIR_KEY and self.metric not in {v.value for v in VARIABLES}:
            raise ValueError(f"unknown screening metric {self.metric!r}")
        return self

    @classmethod
    def none(cls) -> "OutlierPolicy":
        return cls()

    @classmethod
    def manual(cls, entries: Iterable[RecordKey], clamp_excluded: bool = True) -> "OutlierPolicy":
        return cls(mode=OutlierMode.MANUAL, entries=tuple(entries), clamp_excluded=clamp_excluded)

    @classmethod
    def iqr(cls, multiplier: float = 1.5, metric: str = PIR_KEY, clamp_excluded: bool = True) -> "OutlierPolicy":
        return cls(mode=OutlierMode.IQR, multiplier=multiplier, metric=metric, clamp_excluded=clamp_excluded)

    def for_phases(self, phases: Iterable[Phase]) -> "OutlierPolicy":
        """Same policy with manual entries limited to the given phases"""
        wanted = set(phases)
        return self.model_copy(update={"entries": tuple(k for k in self.entries if k.phase in wanted)})

    @property
    def label(self) -> str:
        if self.mode is OutlierMode.MANUAL:
            return f"manual({len(self.entries)})"
        if self.mode is OutlierMode.IQR:
            return f"iqr({self.multiplier:g},{self.metric})"
        return "none"


class Partition(BaseModel):
    model_config = ConfigDict(frozen=True)

    kept: Tuple[StatLine, ...]
    excluded: Tuple[StatLine, ...] = ()

    @property
    def excluded_keys(self) -> FrozenSet[RecordKey]:
        return frozenset(s.key for s in self.excluded)


# Ingestion models
class Diagnostic(BaseModel):
    row: Optional[int] = None
    message: str


class ValidationReport(BaseModel):
    path: str
    records: int
    counts: Dict[str, Dict[str, int]] = {}
    diagnostics: List[Diagnostic] = []

    @property
    def ok(self) -> bool:
        return not self.diagnostics


# Analysis models
class SummaryCell(BaseModel):
    mean_with_outliers: float
    mean_without_outliers: float
    n_records: int
    n_kept: int


class SummaryRow(BaseModel):
    phase: Phase
    scope: Scope
    cells: Dict[str, SummaryCell]


class SummaryTable(BaseModel):
    kind: IndexKind
    players: List[str]
    rows: List[SummaryRow]
    policy_label: str = "none"
    weights: Optional[WeightProfile] = None

    def row(self, phase: Phase, scope: Scope) -> SummaryRow:
        for row in self.rows:
            if row.phase is phase and row.scope is scope:
                return row
        raise KeyError(f"summary table has no row ({phase.value}, {scope.value})")


class TrajectoryPoint(BaseModel):
    season: str
    value: float
    excluded: bool = False


class TrajectorySeries(BaseModel):
    player: str
    phase: Phase
    kind: IndexKind
    scope: Scope
    points: List[TrajectoryPoint]
    lower: Optional[float] = None
    upper: Optional[float] = None

    @model_validator(mode="after")
    def check_points(self) -> "TrajectorySeries":
        years = [season_start_year(p.season) for p in self.points]
        if any(b <= a for a, b in zip(years, years[1:])):
            raise ValueError("trajectory seasons must be strictly increasing")
        tolerance = 1e-9
        for p in self.points:
            if self.lower is not None and p.value < self.lower - tolerance:
                raise ValueError(f"value {p.value} below index bound {self.lower}")
            if self.upper is not None and p.value > self.upper + tolerance:
                raise ValueError(f"value {p.value} above index bound {self.upper}")
        return self


# CLI configuration
class OutputFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


class OutlierMethod(str, Enum):
    NONE = "none"
    MANUAL = "manual"
    IQR = "iqr"
    CURATED = "curated"


class RunConfig(BaseModel):
    command: str
    dataset: Optional[Path] = None
    kind: Optional[IndexKind] = None
    scope: Scope = Scope.JOINT
    phase: PhaseFilter = PhaseFilter.BOTH
    outliers: OutlierMethod = OutlierMethod.NONE
    iqr_multiplier: float = Field(1.5, gt=0.0)
    exclusions: Optional[Path] = None
    weights: WeightProfile = WeightProfile()
    output_format: OutputFormat = OutputFormat.TABLE
    plot: Optional[Path] = None

    @model_validator(mode="after")
    def check_combination(self) -> "RunConfig":
        if self.plot is not None and self.command != "trajectory":
            raise ValueError("--plot is only valid for the trajectory command")
        if self.outliers is OutlierMethod.MANUAL and self.exclusions is None:
            raise ValueError("--outliers manual needs --exclusions PATH")
        return self
