"""
predict: winning percentage from runs scored and allowed

With --gamma prints the exact Pythagorean value, and with --r-ave also the
approximants expanded about the league average. With --beta prints the
linear model 0.500 + beta * (RS - RA).
"""

from pythag.services.core import (
    LeagueAverage,
    Slope,
    approximant_ladder,
    linear_wp,
    pythagorean_wp,
    taylor2_wp,
)
from pythag.services.report import render_predictions

from ._base import PythagCommand, usage_error


class Command(PythagCommand):
    help = "Predict winning percentage from runs scored and allowed"

    def add_arguments(self, parser):
        parser.add_argument("--rs", type=float, required=True, help="runs scored")
        parser.add_argument("--ra", type=float, required=True, help="runs allowed")
        parser.add_argument("--gamma", type=float, default=None, help="Pythagorean exponent")
        parser.add_argument("--beta", type=float, default=None, help="linear-model slope")
        parser.add_argument("--r-ave", type=float, default=None, help="expansion point for the approximants")
        parser.add_argument("--clamp", action="store_true", help="clamp printed values to [0, 1]")
        self.add_unit_argument(parser)
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        gamma, beta, r_ave = options["gamma"], options["beta"], options["r_ave"]
        if (gamma is None) == (beta is None):
            raise usage_error("give exactly one of --gamma or --beta")
        if beta is not None and r_ave is not None:
            raise usage_error("--r-ave applies to --gamma only")

        unit = self.unit(options)
        rs, ra = self.rate(options["rs"], options), self.rate(options["ra"], options)

        if beta is not None:
            predictions = [linear_wp(rs, ra, Slope(value=beta, unit=unit))]
        else:
            predictions = [pythagorean_wp(rs, ra, gamma)]
            if r_ave is not None:
                average = LeagueAverage(value=r_ave, unit=unit)
                ladder = approximant_ladder(rs, ra, gamma, average)
                predictions += ladder[1:] + [taylor2_wp(rs, ra, gamma, average)]

        if options["clamp"]:
            predictions = [p.clamped() for p in predictions]
        return render_predictions(predictions, options["format"])
