"""
Synthetic seasons and Monte Carlo checks of the estimator

Truth model: each team's win probability is the exact Pythagorean formula
at its run rates, and wins are binomial over the schedule. Teams are drawn
independently, so simulated leagues are not schedule-consistent; the
estimator only sees marginal team lines.

Random numbers come from numpy's Philox4x32-10 counter-based bit generator
keyed by the 64-bit config seed. Run i of an experiment uses seed ^ i, so
any run can be reproduced on its own and results do not depend on how runs
are scheduled across workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .core import pythag_kernel
from .errors import DomainError, describe
from .estimator import GammaEstimate, LinearFit, fit_season, gamma_estimate
from .ingest import SeasonDataset, TeamSeason, build_season_dataset, to_regression_points

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "Philox4x32-10"
TRUNCATION = 3.0  # run rates are drawn within r_ave +/- 3 spread

T = TypeVar("T")


class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_teams: int = Field(default=30, ge=3)
    games: int = Field(default=162, ge=1)
    true_gamma: float = Field(default=1.82, gt=0, allow_inf_nan=False)
    r_ave: float = Field(default=4.5, gt=0, allow_inf_nan=False)
    spread: float = Field(default=0.35, ge=0, allow_inf_nan=False)
    balance: bool = True
    seed: int = Field(default=0, ge=0, lt=2**64)
    season: int = 1

    @model_validator(mode="after")
    def _rates_stay_positive(self) -> SimConfig:
        if self.r_ave - TRUNCATION * self.spread <= 0:
            raise ValueError(
                f"r_ave - 3 * spread must be positive (r_ave={self.r_ave}, spread={self.spread})"
            )
        return self

    @classmethod
    def create(cls, **fields) -> SimConfig:
        """Build a config; invalid settings raise DomainError"""
        try:
            return cls(**fields)
        except ValidationError as e:
            raise DomainError(f"invalid simulation config: {describe(e)}") from e

    def for_run(self, index: int) -> SimConfig:
        return self.model_copy(update={"seed": self.seed ^ index})


class RecoveryResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: SimConfig
    gamma_hats: Tuple[float, ...]

    @property
    def runs(self) -> int:
        return len(self.gamma_hats)

    @property
    def mean_gamma_hat(self) -> float:
        return float(np.mean(self.gamma_hats))

    @property
    def bias(self) -> float:
        return self.mean_gamma_hat - self.config.true_gamma

    @property
    def mean_abs_error(self) -> float:
        return float(np.mean(np.abs(np.asarray(self.gamma_hats) - self.config.true_gamma)))

    def within(self, tolerance: float) -> int:
        errors = np.abs(np.asarray(self.gamma_hats) - self.config.true_gamma)
        return int(np.count_nonzero(errors <= tolerance))


class CoverageResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: SimConfig
    runs: int
    level: float
    covered: int
    mean_gamma_hat: float

    @property
    def fraction(self) -> float:
        return self.covered / self.runs


def _run_rates(rng: np.random.Generator, cfg: SimConfig) -> np.ndarray:
    z = rng.standard_normal(cfg.n_teams)
    outside = np.abs(z) > TRUNCATION
    while outside.any():
        z[outside] = rng.standard_normal(int(outside.sum()))
        outside = np.abs(z) > TRUNCATION
    return cfg.r_ave + cfg.spread * z


def simulate_season(cfg: SimConfig) -> SeasonDataset:
    """One synthetic season drawn from the Pythagorean truth model"""
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    rs = _run_rates(rng, cfg)
    ra = _run_rates(rng, cfg)
    if cfg.balance:
        shift = 0.5 * (rs.mean() - ra.mean())
        rs = rs - shift
        ra = ra + shift
    if (rs <= 0).any() or (ra <= 0).any():
        raise DomainError("balancing moved a run rate to zero or below; reduce spread")

    p = pythag_kernel(rs, ra, cfg.true_gamma)
    wins = rng.binomial(cfg.games, p)
    runs_scored = np.rint(rs * cfg.games).astype(np.int64)
    runs_allowed = np.rint(ra * cfg.games).astype(np.int64)

    records = [
        TeamSeason(
            season=cfg.season,
            team=f"T{i + 1:02d}",
            league="SIM",
            games=cfg.games,
            wins=int(wins[i]),
            losses=int(cfg.games - wins[i]),
            runs_scored=int(runs_scored[i]),
            runs_allowed=int(runs_allowed[i]),
        )
        for i in range(cfg.n_teams)
    ]
    return build_season_dataset(records, cfg.season)


def simulate_and_fit(
    cfg: SimConfig, alpha: float = 0.05, m: int = 1
) -> Tuple[SeasonDataset, LinearFit, GammaEstimate]:
    dataset = simulate_season(cfg)
    fit = fit_season(to_regression_points(dataset))
    return dataset, fit, gamma_estimate(fit, dataset.r_ave, alpha, m)


def _map_runs(cfg: SimConfig, runs: int, task: Callable[[SimConfig], T], workers: int) -> List[T]:
    configs = [cfg.for_run(i) for i in range(runs)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(task, configs))
    return [task(c) for c in configs]


def recovery_experiment(cfg: SimConfig, runs: int = 100, workers: int = 1) -> RecoveryResult:
    """gamma_hat for each derived seed"""
    if runs < 1:
        raise DomainError(f"runs must be positive, got {runs}")
    logger.info("recovery: %d runs, seed=%d, rng=%s", runs, cfg.seed, RNG_ALGORITHM)
    estimates = _map_runs(cfg, runs, lambda c: simulate_and_fit(c)[2], workers)
    return RecoveryResult(config=cfg, gamma_hats=tuple(e.gamma_hat for e in estimates))


def coverage_experiment(
    cfg: SimConfig, runs: int = 2000, level: float = 0.95, workers: int = 1
) -> CoverageResult:
    """Fraction of nominal `level` intervals (m=1) that contain the true exponent"""
    if runs < 100:
        raise DomainError(f"coverage needs at least 100 runs, got {runs}")
    if not (0.0 < level < 1.0):
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")

    alpha = 1.0 - level
    logger.info("coverage: %d runs at level %.3f, seed=%d, rng=%s", runs, level, cfg.seed, RNG_ALGORITHM)
    estimates = _map_runs(cfg, runs, lambda c: simulate_and_fit(c, alpha, 1)[2], workers)
    covered = sum(1 for e in estimates if e.covers(cfg.true_gamma))
    return CoverageResult(
        config=cfg,
        runs=runs,
        level=level,
        covered=covered,
        mean_gamma_hat=float(np.mean([e.gamma_hat for e in estimates])),
    )
