from pythag.services.report import render_coverage
from pythag.services.simulate import coverage_experiment

from ._base import PythagCommand, usage_error


class Command(PythagCommand):
    help = "Monte Carlo coverage of the gamma confidence interval"

    def add_arguments(self, parser):
        self.add_sim_arguments(parser)
        parser.add_argument("--runs", type=int, default=2000)
        parser.add_argument("--level", type=float, default=0.95, help="nominal confidence level")
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        cfg = self.sim_config(options)
        if options["runs"] < 100:
            raise usage_error(f"--runs must be at least 100, got {options['runs']}")
        if not (0.0 < options["level"] < 1.0):
            raise usage_error(f"--level must lie in (0, 1), got {options['level']}")

        result = coverage_experiment(cfg, options["runs"], options["level"], self.workers(options))
        return render_coverage(result, options["format"])
