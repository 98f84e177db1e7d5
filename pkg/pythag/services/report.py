"""
Report rendering for the command-line surface

Markdown goes through tabulate (github flavour) with three decimals, the
precision of the published table; CSV carries six decimals so nothing is
lost to presentation rounding. Cells are formatted here before either
writer sees them, so both formats print identical text for a value.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from tabulate import tabulate

from .core import (
    Unit,
    WinPct,
    exp_form_kernel,
    log_form_kernel,
    pythag_kernel,
    ratio_form_kernel,
    taylor1_kernel,
    taylor2_kernel,
)
from .errors import DomainError, GridTooLargeError
from .estimator import GammaEstimate, LinearFit, SeasonFit
from .ingest import SeasonDataset
from .simulate import RNG_ALGORITHM, CoverageResult, SimConfig

logger = logging.getLogger(__name__)

FORMATS = ("markdown", "csv")
MARKDOWN_DECIMALS = 3
CSV_DECIMALS = 6

TABLE_COLUMNS = (
    "season",
    "alpha_hat",
    "beta_hat",
    "r_ave",
    "gamma_hat",
    "gamma_low",
    "gamma_high",
    "r_squared",
)


def _cell(value, decimals: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{float(value):.{decimals}f}"
    return str(getattr(value, "value", value))


def render_rows(
    headers: Sequence[str],
    rows: Iterable[Sequence],
    fmt: str = "markdown",
    decimals: Optional[int] = None,
) -> str:
    """Render rows as a github markdown table or as CSV"""
    if fmt not in FORMATS:
        raise DomainError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if decimals is None:
        decimals = MARKDOWN_DECIMALS if fmt == "markdown" else CSV_DECIMALS
    cells = [[_cell(v, decimals) for v in row] for row in rows]

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(cells)
        return buffer.getvalue()
    return tabulate(cells, headers=list(headers), tablefmt="github", disable_numparse=True) + "\n"


# Season table

def table_rows(results: Sequence[SeasonFit]) -> Tuple[List[str], List[list]]:
    headers = list(TABLE_COLUMNS)
    with_errors = any(not r.ok for r in results)
    if with_errors:
        headers.append("error")

    rows = []
    for r in results:
        if r.ok:
            row = [
                r.season,
                r.fit.alpha_hat,
                r.fit.beta_hat,
                r.r_ave,
                r.estimate.gamma_hat,
                r.estimate.ci_low,
                r.estimate.ci_high,
                r.fit.r_squared,
            ]
        else:
            row = [r.season, None, None, r.r_ave, None, None, None, None]
        if with_errors:
            row.append(r.error)
        rows.append(row)
    return headers, rows


def render_table(results: Sequence[SeasonFit], fmt: str = "markdown") -> str:
    headers, rows = table_rows(results)
    return render_rows(headers, rows, fmt)


def render_fit(season: int, fit: LinearFit, estimate: GammaEstimate, fmt: str = "markdown") -> str:
    rows = [
        ("season", season),
        ("n", fit.n),
        ("intercept", fit.intercept_mode),
        ("alpha_hat", fit.alpha_hat),
        ("beta_hat", fit.beta_hat),
        ("se_beta", fit.se_beta),
        ("t_statistic", fit.t_statistic),
        ("p_value", fit.p_value),
        ("df", fit.df),
        ("r_squared", fit.r_squared),
        ("r_ave", estimate.r_ave_used),
        ("gamma_hat", estimate.gamma_hat),
        ("gamma_low", estimate.ci_low),
        ("gamma_high", estimate.ci_high),
        ("level", estimate.level),
        ("m", estimate.m),
    ]
    return render_rows(("field", "value"), rows, fmt, decimals=CSV_DECIMALS)


def render_predictions(predictions: Sequence[WinPct], fmt: str = "markdown") -> str:
    return render_rows(("formula", "wp"), [(p.source, p.value) for p in predictions], fmt)


def render_quantities(rows: Sequence[Tuple[str, float, str]], fmt: str = "markdown") -> str:
    """(quantity, value, unit) rows, as printed by `convert`"""
    return render_rows(("quantity", "value", "unit"), rows, fmt, decimals=CSV_DECIMALS)


# Simulation summaries

def _config_rows(cfg: SimConfig) -> List[tuple]:
    return [
        ("n_teams", cfg.n_teams),
        ("games", cfg.games),
        ("true_gamma", cfg.true_gamma),
        ("r_ave", cfg.r_ave),
        ("spread", cfg.spread),
        ("balance", cfg.balance),
        ("seed", cfg.seed),
        ("rng", RNG_ALGORITHM),
    ]


def render_simulation(
    cfg: SimConfig,
    dataset: SeasonDataset,
    fit: LinearFit,
    estimate: GammaEstimate,
    fmt: str = "markdown",
) -> str:
    mean_wp = float(np.mean([r.win_pct for r in dataset.records]))
    rows = _config_rows(cfg) + [
        ("league_r_ave", dataset.r_ave.value),
        ("mean_wp", mean_wp),
        ("beta_hat", fit.beta_hat),
        ("r_squared", fit.r_squared),
        ("gamma_hat", estimate.gamma_hat),
        ("gamma_low", estimate.ci_low),
        ("gamma_high", estimate.ci_high),
    ]
    return render_rows(("field", "value"), rows, fmt, decimals=CSV_DECIMALS)


def render_coverage(result: CoverageResult, fmt: str = "markdown") -> str:
    rows = _config_rows(result.config) + [
        ("runs", result.runs),
        ("level", result.level),
        ("covered", result.covered),
        ("coverage", result.fraction),
        ("mean_gamma_hat", result.mean_gamma_hat),
    ]
    return render_rows(("field", "value"), rows, fmt, decimals=CSV_DECIMALS)


# Approximation grid

class GridAxis(BaseModel):
    """Inclusive run range sampled every `step`"""
    model_config = ConfigDict(frozen=True)

    low: float = Field(gt=0, allow_inf_nan=False)
    high: float = Field(gt=0, allow_inf_nan=False)
    step: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _ordered(self) -> GridAxis:
        if self.high < self.low:
            raise ValueError(f"high ({self.high}) is below low ({self.low})")
        return self

    @property
    def size(self) -> int:
        # tolerate accumulated rounding so that the upper bound stays included
        return int(math.floor((self.high - self.low) / self.step + 1e-9)) + 1

    def values(self) -> np.ndarray:
        return self.low + self.step * np.arange(self.size)


class ApproximantSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    max_abs_error: float = Field(ge=0)
    argmax_rs: float
    argmax_ra: float
    wp_min: float
    wp_max: float


class ApproxGridReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma: float
    r_ave: float
    unit: Unit
    rs_axis: GridAxis
    ra_axis: GridAxis
    n_points: int
    summaries: Tuple[ApproximantSummary, ...]

    def get(self, name: str) -> ApproximantSummary:
        for summary in self.summaries:
            if summary.name == name:
                return summary
        raise KeyError(name)


def approx_grid(
    gamma: float,
    r_ave: float,
    rs_axis: GridAxis,
    ra_axis: GridAxis,
    unit: Unit = Unit.PER_GAME,
    max_points: int = 10**7,
) -> ApproxGridReport:
    """Evaluate every approximant against the exact formula on an rs x ra grid"""
    if not (gamma > 0 and r_ave > 0):
        raise DomainError(f"gamma and r_ave must be positive, got {gamma} and {r_ave}")
    n_points = rs_axis.size * ra_axis.size
    if n_points > max_points:
        raise GridTooLargeError(f"grid has {n_points} points, limit is {max_points}")
    logger.debug("approx grid: %d x %d points", rs_axis.size, ra_axis.size)

    rs, ra = np.meshgrid(rs_axis.values(), ra_axis.values(), indexing="ij")
    exact = pythag_kernel(rs, ra, gamma)
    predictions = {
        "exact": exact,
        "taylor1": taylor1_kernel(rs, ra, gamma, r_ave),
        "taylor2": taylor2_kernel(rs, ra, gamma, r_ave),
        "log-form": log_form_kernel(rs, ra, gamma),
        "ratio-form": ratio_form_kernel(rs, ra, gamma),
        "exp-form": exp_form_kernel(rs, ra, gamma),
    }

    summaries = []
    for name, wp in predictions.items():
        errors = np.abs(wp - exact)
        i, j = np.unravel_index(int(np.argmax(errors)), errors.shape)
        summaries.append(
            ApproximantSummary(
                name=name,
                max_abs_error=float(errors[i, j]),
                argmax_rs=float(rs[i, j]),
                argmax_ra=float(ra[i, j]),
                wp_min=float(wp.min()),
                wp_max=float(wp.max()),
            )
        )

    return ApproxGridReport(
        gamma=gamma,
        r_ave=r_ave,
        unit=unit,
        rs_axis=rs_axis,
        ra_axis=ra_axis,
        n_points=n_points,
        summaries=tuple(summaries),
    )


def render_grid(report: ApproxGridReport, fmt: str = "markdown") -> str:
    rows = [
        (s.name, s.max_abs_error, s.argmax_rs, s.argmax_ra, s.wp_min, s.wp_max)
        for s in report.summaries
    ]
    headers = ("approximant", "max_abs_error", "argmax_rs", "argmax_ra", "wp_min", "wp_max")
    return render_rows(headers, rows, fmt, decimals=CSV_DECIMALS)


# SVG scatter

SVG_WIDTH = 640
SVG_HEIGHT = 480
MARGIN_LEFT = 64
MARGIN_RIGHT = 24
MARGIN_TOP = 24
MARGIN_BOTTOM = 56
TICKS = 5


def _padded(low: float, high: float) -> Tuple[float, float]:
    span = high - low
    pad = 0.05 * span if span > 0 else 0.05
    return low - pad, high + pad


def scatter_svg(dataset: SeasonDataset, fit: LinearFit, estimate: GammaEstimate) -> str:
    """Standalone SVG: one circle per team, the fitted line, and fit annotations"""
    x = np.array([r.run_differential_per_game for r in dataset.records])
    y = np.array([r.win_pct for r in dataset.records])
    residuals = y - (fit.alpha_hat + fit.beta_hat * x)

    x_lo, x_hi = _padded(float(x.min()), float(x.max()))
    y_lo, y_hi = _padded(float(y.min()), float(y.max()))
    plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(value: float) -> float:
        return MARGIN_LEFT + (value - x_lo) / (x_hi - x_lo) * plot_w

    def py(value: float) -> float:
        return MARGIN_TOP + (y_hi - value) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="12">',
        f"<title>Season {dataset.season}: winning percentage against run differential</title>",
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444"/>',
    ]

    ticks = []
    bottom = MARGIN_TOP + plot_h
    for k in range(TICKS + 1):
        xv = x_lo + (x_hi - x_lo) * k / TICKS
        yv = y_lo + (y_hi - y_lo) * k / TICKS
        ticks.append(f"M{px(xv):.2f},{bottom} v5")
        ticks.append(f"M{MARGIN_LEFT},{py(yv):.2f} h-5")
        parts.append(
            f'<text x="{px(xv):.2f}" y="{bottom + 18}" text-anchor="middle">{xv:.2f}</text>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{py(yv) + 4:.2f}" text-anchor="end">{yv:.3f}</text>'
        )
    parts.append(f'<path d="{" ".join(ticks)}" stroke="#444"/>')

    for record, xv, yv in zip(dataset.records, x, y):
        parts.append(
            f'<circle cx="{px(xv):.2f}" cy="{py(yv):.2f}" r="3.5" fill="#1f77b4">'
            f"<title>{escape(record.team)} {yv:.3f}</title></circle>"
        )

    x0, x1 = float(x.min()), float(x.max())
    y0 = fit.alpha_hat + fit.beta_hat * x0
    y1 = fit.alpha_hat + fit.beta_hat * x1
    parts.append(
        f'<line x1="{px(x0):.2f}" y1="{py(y0):.2f}" x2="{px(x1):.2f}" y2="{py(y1):.2f}" '
        f'stroke="#d62728" stroke-width="1.5"/>'
    )

    notes = [
        f"beta_hat = {fit.beta_hat:.4f}",
        f"gamma_hat = {estimate.gamma_hat:.3f} [{estimate.ci_low:.3f}, {estimate.ci_high:.3f}]",
        f"R2 = {fit.r_squared:.3f}",
        f"max |residual| = {float(np.max(np.abs(residuals))):.4f}",
    ]
    for k, note in enumerate(notes):
        parts.append(f'<text x="{MARGIN_LEFT + 8}" y="{MARGIN_TOP + 16 + 15 * k}">{escape(note)}</text>')

    parts.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.0f}" y="{SVG_HEIGHT - 12}" text-anchor="middle">'
        f"run differential per game</text>"
    )
    parts.append(
        f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.0f})">winning percentage</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
