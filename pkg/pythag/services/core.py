"""
Pythagorean won-loss formula and its linear approximants

WP = RS^g / (RS^g + RA^g), expanded about the league average point
(R_ave, R_ave). Two families of helpers live here:

- `*_kernel` functions take floats or numpy arrays and do no validation;
  the approximation grid and the simulator call them on whole arrays.
- The typed operations validate positivity and unit agreement, then wrap
  the kernel result in a WinPct that records which formula produced it.

Plain floats are accepted wherever a typed value is expected and are read
as per-game quantities.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import DomainError, UnitError

ArrayLike = Union[float, np.ndarray]


class Unit(str, Enum):
    PER_GAME = "per-game"
    TOTAL = "total"


class WinPctSource(str, Enum):
    EXACT = "exact"
    LOGIT = "logit"
    LINEAR = "linear"
    TAYLOR1 = "taylor1"
    TAYLOR2 = "taylor2"
    EXP_FORM = "exp-form"
    LOG_FORM = "log-form"
    RATIO_FORM = "ratio-form"

    @property
    def is_exact(self) -> bool:
        return self in (WinPctSource.EXACT, WinPctSource.LOGIT)


class _Value(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(allow_inf_nan=False)

    def __float__(self) -> float:
        return self.value


class RunRate(_Value):
    """Runs scored or allowed; the unit flag is carried, never guessed"""
    unit: Unit = Unit.PER_GAME

    def to_per_game(self, games: int) -> RunRate:
        if games <= 0:
            raise DomainError(f"games must be positive, got {games}")
        if self.unit is Unit.PER_GAME:
            return self
        return RunRate(value=self.value / games, unit=Unit.PER_GAME)

    def to_total(self, games: int) -> RunRate:
        if games <= 0:
            raise DomainError(f"games must be positive, got {games}")
        if self.unit is Unit.TOTAL:
            return self
        return RunRate(value=self.value * games, unit=Unit.TOTAL)


class Exponent(_Value):
    """Pythagorean exponent; conversions may yield a non-positive, invalid value"""

    @property
    def is_valid(self) -> bool:
        return self.value > 0


class Slope(_Value):
    """Win percentage per run of differential"""
    unit: Unit = Unit.PER_GAME


class LeagueAverage(_Value):
    """League runs per team, the expansion point of the approximants"""
    unit: Unit = Unit.PER_GAME


class WinPct(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    source: WinPctSource = WinPctSource.EXACT

    def __float__(self) -> float:
        return self.value

    def clamped(self) -> WinPct:
        """Presentation-only clamp to [0, 1]"""
        return WinPct(value=min(1.0, max(0.0, self.value)), source=self.source)


RateLike = Union[RunRate, float]
GammaLike = Union[Exponent, float]
SlopeLike = Union[Slope, float]
AverageLike = Union[LeagueAverage, float]


# Kernels

def pythag_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float) -> ArrayLike:
    rs_g = np.exp(gamma * np.log(rs))
    ra_g = np.exp(gamma * np.log(ra))
    return rs_g / (rs_g + ra_g)


def logit_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float) -> ArrayLike:
    return 1.0 / (1.0 + np.exp(-gamma * (np.log(rs) - np.log(ra))))


def linear_kernel(rs: ArrayLike, ra: ArrayLike, beta: float) -> ArrayLike:
    return 0.5 + beta * (rs - ra)


def taylor1_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float, r_ave: float) -> ArrayLike:
    return linear_kernel(rs, ra, gamma / (4.0 * r_ave))


def taylor2_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float, r_ave: float) -> ArrayLike:
    f_xx, f_xy, f_yy = _second_partials(gamma, r_ave)
    dx = rs - r_ave
    dy = ra - r_ave
    return (
        taylor1_kernel(rs, ra, gamma, r_ave)
        + 0.5 * f_xx * dx * dx
        + f_xy * dx * dy
        + 0.5 * f_yy * dy * dy
    )


def exp_form_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float) -> ArrayLike:
    # pole where gamma * log-difference reaches 2
    with np.errstate(divide="ignore"):
        return 1.0 / (2.0 - gamma * (np.log(rs) - np.log(ra)))


def log_form_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float) -> ArrayLike:
    return 0.5 + (gamma / 4.0) * (np.log(rs) - np.log(ra))


def ratio_form_kernel(rs: ArrayLike, ra: ArrayLike, gamma: float) -> ArrayLike:
    return 0.5 + (gamma / 4.0) * (rs - ra) / ra


def _first_partials(gamma: float, r_ave: float) -> Tuple[float, float]:
    slope = gamma / (4.0 * r_ave)
    return slope, -slope


def _second_partials(gamma: float, r_ave: float) -> Tuple[float, float, float]:
    # f = logistic(gamma * (ln x - ln y)); the logistic's second derivative vanishes at 0
    curvature = gamma / (4.0 * r_ave * r_ave)
    return -curvature, 0.0, curvature


# Validation helpers

def _positive(name: str, value: float) -> float:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def _rate(value: RateLike) -> RunRate:
    return value if isinstance(value, RunRate) else RunRate(value=float(value))


def _slope(value: SlopeLike) -> Slope:
    return value if isinstance(value, Slope) else Slope(value=float(value))


def league_average(value: AverageLike) -> LeagueAverage:
    """Coerce a plain float to a per-game LeagueAverage"""
    return value if isinstance(value, LeagueAverage) else LeagueAverage(value=float(value))


def _gamma(value: GammaLike) -> float:
    raw = value.value if isinstance(value, Exponent) else float(value)
    return _positive("gamma", raw)


def _same_unit(**named) -> Unit:
    units = {name: item.unit for name, item in named.items()}
    if len(set(units.values())) > 1:
        listing = ", ".join(f"{name}={unit.value}" for name, unit in units.items())
        raise UnitError(f"unit mismatch: {listing}")
    return next(iter(units.values()))


def _runs(rs: RateLike, ra: RateLike) -> Tuple[float, float]:
    rs, ra = _rate(rs), _rate(ra)
    _same_unit(rs=rs, ra=ra)
    return _positive("rs", rs.value), _positive("ra", ra.value)


def _runs_about(rs: RateLike, ra: RateLike, r_ave: AverageLike) -> Tuple[float, float, float]:
    rs, ra, r_ave = _rate(rs), _rate(ra), league_average(r_ave)
    _same_unit(rs=rs, ra=ra, r_ave=r_ave)
    return (
        _positive("rs", rs.value),
        _positive("ra", ra.value),
        _positive("r_ave", r_ave.value),
    )


# Operations

def pythagorean_wp(rs: RateLike, ra: RateLike, gamma: GammaLike) -> WinPct:
    """James's formula; scale-invariant, so either unit works if both agree"""
    x, y = _runs(rs, ra)
    return WinPct(value=float(pythag_kernel(x, y, _gamma(gamma))), source=WinPctSource.EXACT)


def exact_logit_identity(rs: RateLike, ra: RateLike, gamma: GammaLike) -> WinPct:
    """The formula rewritten as a logistic in ln(RS) - ln(RA); equal to pythagorean_wp"""
    x, y = _runs(rs, ra)
    return WinPct(value=float(logit_kernel(x, y, _gamma(gamma))), source=WinPctSource.LOGIT)


def linear_wp(rs: RateLike, ra: RateLike, beta: SlopeLike) -> WinPct:
    """0.500 + beta * (RS - RA), never clamped"""
    rs, ra, beta = _rate(rs), _rate(ra), _slope(beta)
    _same_unit(rs=rs, ra=ra, beta=beta)
    return WinPct(value=float(linear_kernel(rs.value, ra.value, beta.value)), source=WinPctSource.LINEAR)


def gamma_from_beta(beta: SlopeLike, r_ave: AverageLike) -> Exponent:
    beta, r_ave = _slope(beta), league_average(r_ave)
    _same_unit(beta=beta, r_ave=r_ave)
    _positive("r_ave", r_ave.value)
    return Exponent(value=4.0 * beta.value * r_ave.value)


def beta_from_gamma(gamma: GammaLike, r_ave: AverageLike) -> Slope:
    r_ave = league_average(r_ave)
    g = _gamma(gamma)
    _positive("r_ave", r_ave.value)
    return Slope(value=g / (4.0 * r_ave.value), unit=r_ave.unit)


def r_ave_from_beta_gamma(beta: SlopeLike, gamma: GammaLike) -> LeagueAverage:
    beta = _slope(beta)
    _positive("beta", beta.value)
    return LeagueAverage(value=_gamma(gamma) / (4.0 * beta.value), unit=beta.unit)


def first_partials(gamma: GammaLike, r_ave: AverageLike) -> Tuple[float, float]:
    """(df/dx, df/dy) at (r_ave, r_ave)"""
    return _first_partials(_gamma(gamma), _positive("r_ave", league_average(r_ave).value))


def second_partials(gamma: GammaLike, r_ave: AverageLike) -> Tuple[float, float, float]:
    """(f_xx, f_xy, f_yy) at (r_ave, r_ave)"""
    return _second_partials(_gamma(gamma), _positive("r_ave", league_average(r_ave).value))


def taylor1_wp(rs: RateLike, ra: RateLike, gamma: GammaLike, r_ave: AverageLike) -> WinPct:
    """Tangent plane at (r_ave, r_ave): 0.500 + gamma / (4 r_ave) * (RS - RA)"""
    x, y, a = _runs_about(rs, ra, r_ave)
    return WinPct(value=float(taylor1_kernel(x, y, _gamma(gamma), a)), source=WinPctSource.TAYLOR1)


def taylor2_wp(rs: RateLike, ra: RateLike, gamma: GammaLike, r_ave: AverageLike) -> WinPct:
    """Second-order expansion at (r_ave, r_ave)"""
    x, y, a = _runs_about(rs, ra, r_ave)
    return WinPct(value=float(taylor2_kernel(x, y, _gamma(gamma), a)), source=WinPctSource.TAYLOR2)


def appendix_exp_form(rs: RateLike, ra: RateLike, gamma: GammaLike) -> WinPct:
    """Logistic with exp linearized: 1 / (2 - gamma * (ln RS - ln RA))"""
    x, y = _runs(rs, ra)
    return WinPct(value=float(exp_form_kernel(x, y, _gamma(gamma))), source=WinPctSource.EXP_FORM)


def appendix_log_form(rs: RateLike, ra: RateLike, gamma: GammaLike) -> WinPct:
    """1/2 + gamma / 4 * (ln RS - ln RA)"""
    x, y = _runs(rs, ra)
    return WinPct(value=float(log_form_kernel(x, y, _gamma(gamma))), source=WinPctSource.LOG_FORM)


def appendix_ratio_form(rs: RateLike, ra: RateLike, gamma: GammaLike) -> WinPct:
    """1/2 + gamma / 4 * (RS - RA) / RA"""
    x, y = _runs(rs, ra)
    return WinPct(value=float(ratio_form_kernel(x, y, _gamma(gamma))), source=WinPctSource.RATIO_FORM)


def approximant_ladder(
    rs: RateLike, ra: RateLike, gamma: GammaLike, r_ave: AverageLike
) -> List[WinPct]:
    """Each rung of the single-variable derivation, from the exact logistic to the tangent plane"""
    return [
        exact_logit_identity(rs, ra, gamma),
        appendix_exp_form(rs, ra, gamma),
        appendix_log_form(rs, ra, gamma),
        appendix_ratio_form(rs, ra, gamma),
        taylor1_wp(rs, ra, gamma, r_ave),
    ]
