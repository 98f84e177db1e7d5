"""
Per-season least-squares estimation of WP = alpha + beta * (RS - RA)

Fits are unweighted OLS over team lines. The slope converts to the
Pythagorean exponent through gamma = 4 * beta * R_ave, with R_ave taken as
a known constant, so the gamma interval is the beta interval scaled by
4 * R_ave. Intervals use Student's t with the fit's residual degrees of
freedom and an optional Bonferroni family size m.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from functools import lru_cache
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import optimize, special

from .core import LeagueAverage, Slope, Unit, gamma_from_beta, league_average
from .errors import (
    DegenerateDesignError,
    DomainError,
    InsufficientDataError,
    PythagError,
    UnitError,
)
from .ingest import RegressionPoint, SeasonDataset, to_regression_points

logger = logging.getLogger(__name__)

MPolicy = Union[int, Literal["seasons"]]


class InterceptMode(str, Enum):
    FREE = "free"
    FIXED_AT_HALF = "fixed_at_half"


class LinearFit(BaseModel):
    """OLS output for one season"""
    model_config = ConfigDict(frozen=True)

    alpha_hat: float
    beta_hat: float
    se_beta: float = Field(ge=0)
    df: int = Field(ge=1)
    r_squared: float = Field(ge=0, le=1)
    n: int = Field(ge=3)
    intercept_mode: InterceptMode = InterceptMode.FREE
    unit: Unit = Unit.PER_GAME

    @property
    def slope(self) -> Slope:
        return Slope(value=self.beta_hat, unit=self.unit)

    @property
    def t_statistic(self) -> float:
        if self.se_beta == 0:
            return math.copysign(math.inf, self.beta_hat) if self.beta_hat else 0.0
        return self.beta_hat / self.se_beta

    @property
    def p_value(self) -> float:
        """Two-sided p-value of beta_hat against zero (diagnostic only)"""
        return student_t_two_sided_tail(abs(self.t_statistic), self.df)


class GammaEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_hat: float
    ci_low: float
    ci_high: float
    level: float = Field(gt=0, lt=1)
    alpha: float = Field(gt=0, lt=1)
    m: int = Field(ge=1)
    r_ave_used: float = Field(gt=0)

    def covers(self, gamma: float) -> bool:
        return self.ci_low <= gamma <= self.ci_high


class SeasonFit(BaseModel):
    """One row of a multi-season run; failures carry `error` instead of results"""
    model_config = ConfigDict(frozen=True)

    season: int
    r_ave: Optional[float] = None
    fit: Optional[LinearFit] = None
    estimate: Optional[GammaEstimate] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


# Student's t

def student_t_two_sided_tail(t: float, df: int) -> float:
    """P(|T| >= t) for t >= 0, through the regularized incomplete beta function"""
    if math.isinf(t):
        return 0.0
    return float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))


def student_t_cdf(t: float, df: int) -> float:
    tail = 0.5 * student_t_two_sided_tail(abs(t), df)
    return 1.0 - tail if t >= 0 else tail


@lru_cache(maxsize=1024)
def t_quantile(p: float, df: int) -> float:
    """p-quantile of Student's t with df degrees of freedom"""
    if not (0.0 < p < 1.0):
        raise DomainError(f"probability must lie in (0, 1), got {p}")
    if int(df) != df or df < 1:
        raise DomainError(f"degrees of freedom must be a positive integer, got {df}")
    if p == 0.5:
        return 0.0

    # solve on the smaller tail, then restore the sign
    q = min(p, 1.0 - p)

    def excess(t: float) -> float:
        return 0.5 * student_t_two_sided_tail(t, df) - q

    upper = 1.0
    while excess(upper) > 0:
        upper *= 2.0
    root = optimize.brentq(excess, 0.0, upper, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=500)
    return root if p > 0.5 else -root


# Fitting

def _arrays(points: Sequence[RegressionPoint]) -> Tuple[np.ndarray, np.ndarray]:
    x = np.fromiter((p.x for p in points), dtype=float, count=len(points))
    y = np.fromiter((p.y for p in points), dtype=float, count=len(points))
    return x, y


def fit_season(
    points: Sequence[RegressionPoint],
    intercept_mode: InterceptMode = InterceptMode.FREE,
) -> LinearFit:
    """Least-squares fit of y on x, with a free intercept or alpha fixed at 0.5"""
    n = len(points)
    if n < 3:
        raise InsufficientDataError(f"need at least 3 teams to fit, got {n}")
    x, y = _arrays(points)
    if np.ptp(x) == 0:
        raise DegenerateDesignError("run differential has zero variance across teams")

    y_bar = y.mean()
    tss = float(np.sum((y - y_bar) ** 2))

    if intercept_mode is InterceptMode.FREE:
        x_bar = x.mean()
        sxx = float(np.sum((x - x_bar) ** 2))
        beta_hat = float(np.sum((x - x_bar) * (y - y_bar)) / sxx)
        alpha_hat = float(y_bar - beta_hat * x_bar)
        df = n - 2
    else:
        sxx = float(np.sum(x * x))
        beta_hat = float(np.sum(x * (y - 0.5)) / sxx)
        alpha_hat = 0.5
        df = n - 1

    residuals = y - (alpha_hat + beta_hat * x)
    rss = float(np.sum(residuals ** 2))
    se_beta = math.sqrt(rss / df / sxx)

    if tss > 0:
        r_squared = min(1.0, max(0.0, 1.0 - rss / tss))
    else:
        r_squared = 1.0 if rss == 0 else 0.0

    return LinearFit(
        alpha_hat=alpha_hat,
        beta_hat=beta_hat,
        se_beta=se_beta,
        df=df,
        r_squared=r_squared,
        n=n,
        intercept_mode=intercept_mode,
    )


def _check_alpha(alpha: float, m: int) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"significance level must lie in (0, 1), got {alpha}")
    if int(m) != m or m < 1:
        raise DomainError(f"Bonferroni family size must be a positive integer, got {m}")


def beta_ci(fit: LinearFit, alpha: float = 0.05, m: int = 1) -> Tuple[float, float]:
    """Bonferroni-adjusted t interval for beta: per-test significance alpha / m"""
    _check_alpha(alpha, m)
    if fit.se_beta == 0:
        return fit.beta_hat, fit.beta_hat
    adjusted = alpha / m
    half_width = t_quantile(1.0 - adjusted / 2.0, fit.df) * fit.se_beta
    return fit.beta_hat - half_width, fit.beta_hat + half_width


def gamma_estimate(
    fit: LinearFit,
    r_ave: Union[LeagueAverage, float],
    alpha: float = 0.05,
    m: int = 1,
) -> GammaEstimate:
    """gamma_hat = 4 * beta_hat * R_ave and the beta interval scaled alike"""
    r_ave = league_average(r_ave)
    if r_ave.unit is not fit.unit:
        raise UnitError(f"unit mismatch: fit={fit.unit.value}, r_ave={r_ave.unit.value}")
    gamma_hat = gamma_from_beta(fit.slope, r_ave).value
    low, high = beta_ci(fit, alpha, m)
    scale = 4.0 * r_ave.value
    return GammaEstimate(
        gamma_hat=gamma_hat,
        ci_low=scale * low,
        ci_high=scale * high,
        level=1.0 - alpha,
        alpha=alpha,
        m=m,
        r_ave_used=r_ave.value,
    )


def resolve_m(m_policy: MPolicy, n_seasons: int) -> int:
    if m_policy == "seasons":
        return max(1, n_seasons)
    if isinstance(m_policy, int) and m_policy >= 1:
        return m_policy
    raise DomainError(f"m must be a positive integer or 'seasons', got {m_policy!r}")


def fit_dataset(
    dataset: SeasonDataset,
    intercept_mode: InterceptMode = InterceptMode.FREE,
    alpha: float = 0.05,
    m: int = 1,
) -> Tuple[LinearFit, GammaEstimate]:
    fit = fit_season(to_regression_points(dataset), intercept_mode)
    estimate = gamma_estimate(fit, dataset.r_ave, alpha, m)
    logger.debug(
        "season %s: beta_hat=%.5f se=%.5f gamma_hat=%.4f r2=%.4f",
        dataset.season, fit.beta_hat, fit.se_beta, estimate.gamma_hat, fit.r_squared,
    )
    return fit, estimate


def fit_all_seasons(
    datasets: Sequence[SeasonDataset],
    intercept_mode: InterceptMode = InterceptMode.FREE,
    alpha: float = 0.05,
    m_policy: MPolicy = "seasons",
    workers: int = 1,
) -> List[SeasonFit]:
    """One row per season, sorted by season; a failing season does not stop the others"""
    if not datasets:
        return []
    m = resolve_m(m_policy, len(datasets))
    _check_alpha(alpha, m)

    def run(dataset: SeasonDataset) -> SeasonFit:
        try:
            fit, estimate = fit_dataset(dataset, intercept_mode, alpha, m)
        except PythagError as e:
            logger.warning("season %s failed: %s", dataset.season, e)
            return SeasonFit(season=dataset.season, r_ave=dataset.r_ave.value, error=str(e))
        return SeasonFit(season=dataset.season, r_ave=dataset.r_ave.value, fit=fit, estimate=estimate)

    ordered = sorted(datasets, key=lambda ds: ds.season)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, ordered))
    return [run(ds) for ds in ordered]
