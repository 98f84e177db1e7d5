"""
simulate: fit one synthetic season, or summarize --runs seeded seasons

Run i uses seed ^ i, so `--seed S --runs 1` reproduces the first run of
any experiment started from S.
"""

from pythag.services.report import render_rows, render_simulation
from pythag.services.simulate import RNG_ALGORITHM, recovery_experiment, simulate_and_fit

from ._base import PythagCommand, usage_error


class Command(PythagCommand):
    help = "Simulate seasons from the Pythagorean formula and fit the exponent"

    def add_arguments(self, parser):
        self.add_sim_arguments(parser)
        parser.add_argument("--runs", type=int, default=1)
        self.add_alpha_argument(parser)
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        cfg = self.sim_config(options)
        runs = options["runs"]
        if runs < 1:
            raise usage_error(f"--runs must be at least 1, got {runs}")

        if runs == 1:
            dataset, fit, estimate = simulate_and_fit(cfg, self.alpha(options))
            return render_simulation(cfg, dataset, fit, estimate, options["format"])

        result = recovery_experiment(cfg, runs, self.workers(options))
        rows = [
            ("true_gamma", cfg.true_gamma),
            ("seed", cfg.seed),
            ("rng", RNG_ALGORITHM),
            ("runs", result.runs),
            ("mean_gamma_hat", result.mean_gamma_hat),
            ("bias", result.bias),
            ("mean_abs_error", result.mean_abs_error),
        ]
        return render_rows(("field", "value"), rows, options["format"], decimals=6)
