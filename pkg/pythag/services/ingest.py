"""
Standings ingest

Reads team season lines from delimited UTF-8 text with the fixed header

    season,team,league,games,wins,losses,runs_scored,runs_allowed

and turns them into per-season datasets. A season's R_ave is pooled over
every team in the file for that year: total runs scored over total games,
in runs per game.
"""

from __future__ import annotations

import io
import logging
import re
from collections import defaultdict
from pathlib import Path
from typing import BinaryIO, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .core import LeagueAverage, Unit
from .errors import (
    DomainError,
    IngestError,
    InsufficientDataError,
    InvalidRecordError,
    ParseError,
    SchemaError,
    SeasonNotFoundError,
    describe,
)

logger = logging.getLogger(__name__)

COLUMNS = (
    "season",
    "team",
    "league",
    "games",
    "wins",
    "losses",
    "runs_scored",
    "runs_allowed",
)
INTEGER_COLUMNS = ("season", "games", "wins", "losses", "runs_scored", "runs_allowed")
MIN_TEAMS = 3


class TeamSeason(BaseModel):
    """One team's season line; runs are season totals"""
    model_config = ConfigDict(frozen=True)

    season: int
    team: str = Field(min_length=1)
    league: str
    games: int = Field(gt=0)
    wins: int = Field(ge=0)
    losses: int = Field(ge=0)
    runs_scored: int = Field(ge=0)
    runs_allowed: int = Field(ge=0)

    @model_validator(mode="after")
    def _decisions_fit_schedule(self) -> TeamSeason:
        if self.decisions > self.games:
            raise ValueError(f"wins + losses ({self.decisions}) exceeds games ({self.games})")
        if self.decisions < 1:
            raise ValueError("wins + losses must be at least 1")
        return self

    @property
    def decisions(self) -> int:
        return self.wins + self.losses

    @property
    def win_pct(self) -> float:
        return self.wins / self.decisions

    @property
    def run_differential_per_game(self) -> float:
        return (self.runs_scored - self.runs_allowed) / self.games


class RegressionPoint(BaseModel):
    """x: run differential per game, y: winning percentage, weight: games played"""
    model_config = ConfigDict(frozen=True)

    x: float = Field(allow_inf_nan=False)
    y: float = Field(ge=0, le=1)
    weight: int = Field(default=1, ge=1)


class SeasonDataset(BaseModel):
    model_config = ConfigDict(frozen=True)

    season: int
    records: Tuple[TeamSeason, ...]
    r_ave: LeagueAverage
    n_teams: int

    @model_validator(mode="after")
    def _consistent(self) -> SeasonDataset:
        if any(r.season != self.season for r in self.records):
            raise ValueError(f"records from other seasons in the {self.season} dataset")
        if self.n_teams != len(self.records):
            raise ValueError(f"n_teams={self.n_teams} but {len(self.records)} records")
        return self


def _error_line(message: str) -> Optional[int]:
    match = re.search(r"line (\d+)", message)
    return int(match.group(1)) if match else None


def _read_frame(text: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(
            io.StringIO(text),
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError as e:
        raise SchemaError("missing header row") from e
    except pd.errors.ParserError as e:
        raise ParseError(f"malformed row: {e}", _error_line(str(e))) from e
    if not isinstance(frame.index, pd.RangeIndex):
        # pandas turns surplus fields on the first data row into an index
        raise ParseError(f"expected {len(frame.columns)} fields", 2)

    columns = [str(c).strip() for c in frame.columns]
    missing = [c for c in COLUMNS if c not in columns]
    if missing:
        raise SchemaError(f"missing column(s): {', '.join(missing)}")
    unexpected = [c for c in columns if c not in COLUMNS]
    if unexpected:
        raise SchemaError(f"unexpected column(s): {', '.join(unexpected)}")
    frame.columns = columns
    return frame


def parse_standings(source: Union[bytes, BinaryIO]) -> List[TeamSeason]:
    """Parse standings text; one record per data row, in file order"""
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        text = bytes(data).decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not UTF-8: {e}") from e
    if not text.strip():
        raise SchemaError("missing header row")

    frame = _read_frame(text)
    records: List[TeamSeason] = []
    for offset, row in enumerate(frame[list(COLUMNS)].itertuples(index=False, name=None)):
        line = offset + 2  # header is line 1
        cells = [value.strip() if isinstance(value, str) else None for value in row]
        if not any(cells):
            continue
        empty = [name for name, value in zip(COLUMNS, cells) if not value]
        if empty:
            raise ParseError(f"missing value(s) for {', '.join(empty)}", line)

        fields: Dict[str, Union[int, str]] = dict(zip(COLUMNS, cells))
        for name in INTEGER_COLUMNS:
            try:
                fields[name] = int(fields[name])
            except ValueError as e:
                raise ParseError(f"{name} is not an integer: {fields[name]!r}", line) from e

        try:
            records.append(TeamSeason(**fields))
        except ValidationError as e:
            raise InvalidRecordError(
                f"line {line}: record {fields['season']} {fields['team']}: {describe(e)}"
            ) from e

    logger.debug("parsed %d team lines", len(records))
    return records


def load_standings(path: Union[str, Path], stdin: Optional[BinaryIO] = None) -> List[TeamSeason]:
    """Parse a standings file; `-` reads the given binary stdin"""
    if str(path) == "-":
        if stdin is None:
            raise IngestError("standard input is not available")
        return parse_standings(stdin)
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise IngestError(f"cannot read {path}: {e.strerror or e}") from e
    return parse_standings(data)


def serialize_standings(records: Sequence[TeamSeason]) -> str:
    frame = pd.DataFrame([r.model_dump() for r in records], columns=list(COLUMNS))
    return frame.to_csv(index=False, lineterminator="\n")


def group_by_season(records: Sequence[TeamSeason]) -> Dict[int, List[TeamSeason]]:
    """Split a multi-season file by year, seasons ascending"""
    grouped: Dict[int, List[TeamSeason]] = defaultdict(list)
    for record in records:
        grouped[record.season].append(record)
    return dict(sorted(grouped.items()))


def build_season_dataset(records: Sequence[TeamSeason], season: int) -> SeasonDataset:
    selected = tuple(r for r in records if r.season == season)
    if not selected:
        raise SeasonNotFoundError(f"no records for season {season}")
    if len(selected) < MIN_TEAMS:
        raise InsufficientDataError(
            f"season {season} has {len(selected)} teams, need at least {MIN_TEAMS}"
        )

    runs = sum(r.runs_scored for r in selected)
    games = sum(r.games for r in selected)
    if runs <= 0:
        raise DomainError(f"season {season} has no runs scored")

    return SeasonDataset(
        season=season,
        records=selected,
        r_ave=LeagueAverage(value=runs / games, unit=Unit.PER_GAME),
        n_teams=len(selected),
    )


def to_regression_points(dataset: SeasonDataset) -> List[RegressionPoint]:
    points = []
    for record in dataset.records:
        if record.decisions == 0:
            raise InvalidRecordError(f"record {record.season} {record.team}: no decisions")
        points.append(
            RegressionPoint(
                x=record.run_differential_per_game,
                y=record.win_pct,
                weight=record.games,
            )
        )
    return points
