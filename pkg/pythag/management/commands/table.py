"""
table: one fitted row per season of a standings file

Columns follow the published table: season, alpha_hat, beta_hat, R_ave,
gamma_hat, the gamma interval and R^2. A season that cannot be fitted is
printed with an error column and makes the command exit 1 after the table
is written.
"""

import logging

from django.core.management.base import CommandError

from pythag.services.errors import PythagError
from pythag.services.estimator import InterceptMode, SeasonFit, fit_all_seasons, resolve_m
from pythag.services.ingest import build_season_dataset, group_by_season
from pythag.services.report import render_table

from ._base import FAILURE, PythagCommand, usage_error

logger = logging.getLogger(__name__)


def parse_m(raw: str):
    if raw == "seasons":
        return raw
    try:
        m = int(raw)
    except ValueError:
        m = 0
    if m < 1:
        raise usage_error(f"--m must be a positive integer or 'seasons', got {raw!r}")
    return m


class Command(PythagCommand):
    help = "Fit every season in a standings file and print the coefficient table"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        self.add_alpha_argument(parser)
        parser.add_argument(
            "--m", default="1",
            help="Bonferroni family size: an integer or 'seasons' (default 1)",
        )
        parser.add_argument(
            "--intercept", choices=[m.value for m in InterceptMode], default=InterceptMode.FREE.value,
        )
        parser.add_argument("--workers", type=int, default=None, help="default: PYTHAG_WORKERS")
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        m_policy = parse_m(options["m"])
        alpha = self.alpha(options)
        workers = self.workers(options)

        grouped = group_by_season(self.records(options))
        m = resolve_m(m_policy, len(grouped))

        datasets, failed = [], []
        for season, records in grouped.items():
            try:
                datasets.append(build_season_dataset(records, season))
            except PythagError as e:
                logger.warning("season %s skipped: %s", season, e)
                failed.append(SeasonFit(season=season, error=str(e)))

        results = fit_all_seasons(
            datasets, InterceptMode(options["intercept"]), alpha, m, workers=workers,
        )
        rows = sorted(results + failed, key=lambda r: r.season)
        self.stdout.write(render_table(rows, options["format"]), ending="")

        errors = [r for r in rows if not r.ok]
        if errors:
            raise CommandError(f"{len(errors)} season(s) could not be fitted", returncode=FAILURE)
