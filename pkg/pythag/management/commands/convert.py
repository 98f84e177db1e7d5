"""
convert: beta, gamma and R_ave from any two of them

gamma = 4 * beta * R_ave. With --games the slope and league average are
also printed in the other unit: a per-game run is 1/games of a season's.

`--beta LOW HIGH --r-ave R` turns a slope range into an exponent range:

    python manage.py convert --beta 0.00053 0.00078 --r-ave 721 --unit total
"""

from pythag.services.core import (
    LeagueAverage,
    Slope,
    Unit,
    beta_from_gamma,
    gamma_from_beta,
    r_ave_from_beta_gamma,
)
from pythag.services.report import render_quantities

from ._base import PythagCommand, usage_error


def _gamma_label(gamma) -> str:
    return "" if gamma.is_valid else "invalid"


class Command(PythagCommand):
    help = "Convert between slope, exponent and league average runs"

    def add_arguments(self, parser):
        parser.add_argument(
            "--beta", type=float, nargs="+", default=None, metavar="BETA",
            help="slope, or LOW HIGH for a range (range needs --r-ave)",
        )
        parser.add_argument("--gamma", type=float, default=None)
        parser.add_argument("--r-ave", type=float, default=None)
        parser.add_argument("--games", type=int, default=None, help="season length for unit conversion")
        self.add_unit_argument(parser)
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        betas = options["beta"]
        if betas is not None and len(betas) > 2:
            raise usage_error("--beta takes one value or a LOW HIGH range")
        games = options["games"]
        if games is not None and games < 1:
            raise usage_error(f"--games must be positive, got {games}")
        if betas is not None and len(betas) == 2:
            if options["gamma"] is not None or options["r_ave"] is None:
                raise usage_error("a --beta range needs --r-ave and no --gamma")
            return self.beta_range(sorted(betas), options["r_ave"], games, options)

        values = {"beta": betas[0] if betas else None, "gamma": options["gamma"], "r_ave": options["r_ave"]}
        given = {k: v for k, v in values.items() if v is not None}
        if len(given) != 2:
            raise usage_error("give exactly two of --beta, --gamma, --r-ave")

        unit = self.unit(options)
        if "gamma" not in given:
            beta = Slope(value=given["beta"], unit=unit)
            r_ave = LeagueAverage(value=given["r_ave"], unit=unit)
            gamma = gamma_from_beta(beta, r_ave)
        elif "beta" not in given:
            gamma_value = given["gamma"]
            r_ave = LeagueAverage(value=given["r_ave"], unit=unit)
            beta = beta_from_gamma(gamma_value, r_ave)
            gamma = None
        else:
            beta = Slope(value=given["beta"], unit=unit)
            r_ave = r_ave_from_beta_gamma(beta, given["gamma"])
            gamma = None

        if gamma is None:
            gamma_value, gamma_label = given["gamma"], ""
        else:
            gamma_value, gamma_label = gamma.value, _gamma_label(gamma)

        rows = [
            ("beta", beta.value, unit.value),
            ("gamma", gamma_value, gamma_label),
            ("r_ave", r_ave.value, unit.value),
        ]
        if games is not None:
            rows += _other_unit(beta, r_ave, games)
        return render_quantities(rows, options["format"])

    def beta_range(self, betas, r_ave_value, games, options):
        unit = self.unit(options)
        r_ave = LeagueAverage(value=r_ave_value, unit=unit)
        low, high = (Slope(value=b, unit=unit) for b in betas)
        gamma_low, gamma_high = gamma_from_beta(low, r_ave), gamma_from_beta(high, r_ave)
        rows = [
            ("beta_low", low.value, unit.value),
            ("beta_high", high.value, unit.value),
            ("gamma_low", gamma_low.value, _gamma_label(gamma_low)),
            ("gamma_high", gamma_high.value, _gamma_label(gamma_high)),
            ("r_ave", r_ave.value, unit.value),
        ]
        if games is not None:
            (_, low_other, other_unit), (_, r_ave_other, _) = _other_unit(low, r_ave, games)
            (_, high_other, _), _ = _other_unit(high, r_ave, games)
            rows += [
                ("beta_low", low_other, other_unit),
                ("beta_high", high_other, other_unit),
                ("r_ave", r_ave_other, other_unit),
            ]
        return render_quantities(rows, options["format"])


def _other_unit(beta: Slope, r_ave: LeagueAverage, games: int):
    if beta.unit is Unit.TOTAL:
        return [
            ("beta", beta.value * games, Unit.PER_GAME.value),
            ("r_ave", r_ave.value / games, Unit.PER_GAME.value),
        ]
    return [
        ("beta", beta.value / games, Unit.TOTAL.value),
        ("r_ave", r_ave.value * games, Unit.TOTAL.value),
    ]
