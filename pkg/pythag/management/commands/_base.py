"""
Shared plumbing for the pythag management commands

Exit codes: 0 success, 1 domain or data failure, 2 usage error.
"""

import logging
import sys
from typing import Optional

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from pythag.services.core import RunRate, Unit
from pythag.services.errors import DomainError, PythagError, describe
from pythag.services.ingest import load_standings
from pythag.services.report import FORMATS
from pythag.services.simulate import SimConfig

USAGE = 2
FAILURE = 1

VALID_UNITS = [u.value for u in Unit]


def usage_error(message: str) -> CommandError:
    return CommandError(message, returncode=USAGE)


class PythagCommand(BaseCommand):
    requires_system_checks = []
    stealth_options = ("stdin",)

    def execute(self, *args, **options):
        if options.get("verbosity", 1) >= 2:
            logging.getLogger("pythag").setLevel(logging.DEBUG)
        try:
            return super().execute(*args, **options)
        except PythagError as e:
            raise CommandError(str(e), returncode=FAILURE) from e
        except ValidationError as e:
            raise CommandError(describe(e), returncode=FAILURE) from e

    # Argument groups

    def add_unit_argument(self, parser):
        parser.add_argument(
            "--unit", choices=VALID_UNITS, default=Unit.PER_GAME.value,
            help="run quantities are per game (default) or season totals",
        )

    def add_format_argument(self, parser):
        parser.add_argument("--format", choices=FORMATS, default="markdown")

    def add_input_argument(self, parser):
        parser.add_argument(
            "--input", default=None,
            help="standings CSV, '-' for standard input (default: PYTHAG_DATA_FILE)",
        )

    def add_alpha_argument(self, parser):
        parser.add_argument(
            "--alpha", type=float, default=None,
            help="significance level (default: PYTHAG_ALPHA)",
        )

    def add_sim_arguments(self, parser):
        defaults = SimConfig()
        parser.add_argument("--teams", type=int, default=defaults.n_teams)
        parser.add_argument("--games", type=int, default=defaults.games)
        parser.add_argument("--gamma", type=float, default=defaults.true_gamma, help="true exponent")
        parser.add_argument("--r-ave", type=float, default=defaults.r_ave, help="league average runs in --unit")
        parser.add_argument("--spread", type=float, default=defaults.spread, help="run-rate scale in --unit")
        self.add_unit_argument(parser)
        parser.add_argument("--no-balance", action="store_true", help="skip the league run balance shift")
        parser.add_argument("--seed", type=int, default=None, help="default: PYTHAG_SEED")
        parser.add_argument("--workers", type=int, default=None, help="default: PYTHAG_WORKERS")

    # Option resolution

    def alpha(self, options) -> float:
        alpha = options.get("alpha")
        alpha = settings.PYTHAG_ALPHA if alpha is None else alpha
        if not (0.0 < alpha < 1.0):
            raise usage_error(f"--alpha must lie in (0, 1), got {alpha}")
        return alpha

    def workers(self, options) -> int:
        workers = options.get("workers")
        workers = settings.PYTHAG_WORKERS if workers is None else workers
        if workers < 1:
            raise usage_error(f"--workers must be at least 1, got {workers}")
        return workers

    def unit(self, options) -> Unit:
        return Unit(options["unit"])

    def rate(self, value: float, options) -> RunRate:
        return RunRate(value=value, unit=self.unit(options))

    def records(self, options):
        path = options.get("input") or settings.PYTHAG_DATA_FILE
        stdin = options.get("stdin")
        if str(path) == "-" and stdin is None:
            stdin = sys.stdin.buffer
        return load_standings(path, stdin=stdin)

    def sim_config(self, options, season: Optional[int] = None) -> SimConfig:
        seed = options.get("seed")
        games = options["games"]
        if games < 1:
            raise usage_error(f"--games must be at least 1, got {games}")
        # SimConfig works in runs per game
        per_game = games if self.unit(options) is Unit.TOTAL else 1
        fields = dict(
            n_teams=options["teams"],
            games=games,
            true_gamma=options["gamma"],
            r_ave=options["r_ave"] / per_game,
            spread=options["spread"] / per_game,
            balance=not options["no_balance"],
            seed=settings.PYTHAG_SEED if seed is None else seed,
        )
        if season is not None:
            fields["season"] = season
        try:
            return SimConfig.create(**fields)
        except DomainError as e:
            raise usage_error(str(e)) from e
