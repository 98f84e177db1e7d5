from pythag.services.estimator import InterceptMode, fit_dataset
from pythag.services.ingest import build_season_dataset
from pythag.services.report import render_fit

from ._base import PythagCommand, usage_error


class Command(PythagCommand):
    help = "Fit WP = alpha + beta * (RS - RA) for one season and report gamma"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--season", type=int, required=True)
        self.add_alpha_argument(parser)
        parser.add_argument("--m", type=int, default=1, help="Bonferroni family size")
        parser.add_argument(
            "--intercept", choices=[m.value for m in InterceptMode], default=InterceptMode.FREE.value,
        )
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        if options["m"] < 1:
            raise usage_error(f"--m must be at least 1, got {options['m']}")
        alpha = self.alpha(options)

        dataset = build_season_dataset(self.records(options), options["season"])
        fit, estimate = fit_dataset(dataset, InterceptMode(options["intercept"]), alpha, options["m"])
        return render_fit(dataset.season, fit, estimate, options["format"])
