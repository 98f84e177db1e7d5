"""
Management command tests through call_command

Usage problems raise CommandError with returncode 2, domain and data
failures returncode 1.
"""

import csv
import io
import tempfile
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

HEADER = "season,team,league,games,wins,losses,runs_scored,runs_allowed\n"


def run(*args, **options):
    out = io.StringIO()
    call_command(*args, stdout=out, stderr=io.StringIO(), **options)
    return out.getvalue()


class CommandTestCase(SimpleTestCase):

    def assertExitCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            run(*args, **options)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


def rows(text):
    return {r["field"]: r["value"] for r in csv.DictReader(io.StringIO(text))}


class PredictCommandTests(CommandTestCase):

    def test_exact_with_totals(self):
        out = run("predict", "--rs", "800", "--ra", "600", "--gamma", "2", "--unit", "total")
        self.assertIn("exact", out)
        self.assertIn("0.640", out)

    def test_even_runs(self):
        out = run("predict", "--rs", "721", "--ra", "721", "--gamma", "1.88", "--unit", "total")
        self.assertIn("0.500", out)

    def test_linear_model(self):
        out = run("predict", "--rs", "800", "--ra", "600", "--beta", "0.00065", "--unit", "total")
        self.assertIn("linear", out)
        self.assertIn("0.630", out)

    def test_approximants_with_league_average(self):
        out = run("predict", "--rs", "5.2", "--ra", "4.0", "--gamma", "1.82", "--r-ave", "4.5", "--format", "csv")
        formulas = [line.split(",")[0] for line in out.splitlines()[1:]]
        self.assertEqual(formulas, ["exact", "exp-form", "log-form", "ratio-form", "taylor1", "taylor2"])
        self.assertIn("taylor2,0.618637", out)

    def test_clamp(self):
        out = run("predict", "--rs", "9", "--ra", "1", "--beta", "0.2", "--clamp")
        self.assertIn("1.000", out)

    def test_parameter_conflicts_are_usage_errors(self):
        self.assertExitCode(2, "predict", "--rs", "800", "--ra", "600", "--gamma", "2", "--beta", "0.0006")
        self.assertExitCode(2, "predict", "--rs", "800", "--ra", "600")
        self.assertExitCode(2, "predict", "--rs", "8", "--ra", "6", "--beta", "0.1", "--r-ave", "7")

    def test_domain_error_exit_one(self):
        error = self.assertExitCode(1, "predict", "--rs", "0", "--ra", "600", "--gamma", "2")
        self.assertIn("rs must be positive", str(error))


class ConvertCommandTests(CommandTestCase):

    def test_gamma_from_beta(self):
        out = run("convert", "--beta", "0.00065", "--r-ave", "721", "--unit", "total", "--format", "csv")
        self.assertIn("gamma,1.874600,", out)

    def test_r_ave_from_beta_and_gamma(self):
        out = run("convert", "--beta", "0.00065", "--gamma", "1.81", "--unit", "total", "--games", "162", "--format", "csv")
        self.assertIn("r_ave,696.153846,total", out)
        self.assertIn("r_ave,4.297246,per-game", out)

    def test_beta_from_gamma(self):
        out = run("convert", "--gamma", "2", "--r-ave", "0.5", "--format", "csv")
        self.assertIn("beta,1.000000,per-game", out)

    def test_invalid_exponent_flagged(self):
        out = run("convert", "--beta", "0", "--r-ave", "4.5", "--format", "csv")
        self.assertIn("gamma,0.000000,invalid", out)

    def test_slope_range_to_exponent_range(self):
        out = run("convert", "--beta", "0.00078", "0.00053", "--r-ave", "721", "--unit", "total", "--format", "csv")
        values = {line.split(",")[0]: float(line.split(",")[1]) for line in out.splitlines()[1:]}
        self.assertEqual(values["beta_low"], 0.00053)
        self.assertAlmostEqual(values["gamma_low"], 1.529, delta=0.001)
        self.assertAlmostEqual(values["gamma_high"], 2.250, delta=0.001)

    def test_slope_range_usage_errors(self):
        self.assertExitCode(2, "convert", "--beta", "0.0005", "0.0007")
        self.assertExitCode(2, "convert", "--beta", "0.0005", "0.0007", "--gamma", "1.8", "--r-ave", "721")
        self.assertExitCode(2, "convert", "--beta", "0.1", "0.2", "0.3", "--r-ave", "4.5")

    def test_needs_two_quantities(self):
        self.assertExitCode(2, "convert", "--beta", "0.00065")
        self.assertExitCode(2, "convert", "--beta", "0.1", "--gamma", "1.8", "--r-ave", "4.5")


class FitCommandTests(CommandTestCase):

    def test_single_season(self):
        values = rows(run("fit", "--season", "2010", "--format", "csv"))
        self.assertEqual(values["n"], "30")
        self.assertAlmostEqual(float(values["gamma_hat"]), 1.634, delta=0.06)
        self.assertAlmostEqual(float(values["r_ave"]), 4.366, delta=0.02)

    def test_bonferroni_flag(self):
        values = rows(run("fit", "--season", "2010", "--m", "20", "--format", "csv"))
        self.assertAlmostEqual(float(values["gamma_low"]), 1.399, delta=0.06)
        self.assertAlmostEqual(float(values["gamma_high"]), 1.870, delta=0.06)

    def test_missing_season(self):
        error = self.assertExitCode(1, "fit", "--season", "1850")
        self.assertIn("1850", str(error))

    def test_bad_alpha_is_usage_error(self):
        self.assertExitCode(2, "fit", "--season", "2010", "--alpha", "1.5")


class TableCommandTests(CommandTestCase):

    def test_bundled_file(self):
        out = run("table", "--format", "csv")
        lines = out.splitlines()
        self.assertEqual(len(lines), 22)
        self.assertTrue(lines[1].startswith("1991,"))
        self.assertEqual(out, run("table", "--format", "csv"))

    def test_family_size(self):
        unadjusted = {r["season"]: r for r in csv.DictReader(io.StringIO(run("table", "--format", "csv")))}
        adjusted = {r["season"]: r for r in csv.DictReader(io.StringIO(run("table", "--m", "seasons", "--format", "csv")))}
        self.assertLess(float(adjusted["2010"]["gamma_low"]), float(unadjusted["2010"]["gamma_low"]))
        self.assertAlmostEqual(float(unadjusted["2010"]["gamma_low"]), 1.489, delta=0.06)

    def test_bad_family_size(self):
        self.assertExitCode(2, "table", "--m", "zero")
        self.assertExitCode(2, "table", "--m", "0")

    def test_single_season_from_stdin(self):
        text = HEADER + "".join(
            f"2000,T{i},AL,162,{81 + d},{81 - d},{700 + 10 * d},{700 - 10 * d}\n"
            for i, d in enumerate((-6, -2, 1, 3, 5))
        )
        out = run("table", "--input", "-", "--format", "csv", stdin=io.BytesIO(text.encode()))
        self.assertEqual(len(out.splitlines()), 2)

    def test_failing_season_exits_one_after_printing(self):
        text = HEADER + (
            "2000,AAA,AL,162,90,72,800,700\n"
            "2000,BBB,AL,162,72,90,700,800\n"
            "2001,AAA,AL,162,90,72,800,700\n"
            "2001,BBB,AL,162,81,81,750,750\n"
            "2001,CCC,AL,162,72,90,700,800\n"
        )
        out = io.StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("table", "--input", "-", "--format", "csv", stdin=io.BytesIO(text.encode()), stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        lines = out.getvalue().splitlines()
        self.assertTrue(lines[0].endswith(",error"))
        self.assertIn("need at least 3", lines[1])
        self.assertTrue(lines[2].startswith("2001,"))

    def test_malformed_input(self):
        error = self.assertExitCode(1, "table", "--input", "-", stdin=io.BytesIO(b"season,team\n2000,AAA\n"))
        self.assertIn("missing column", str(error))


class ApproxGridCommandTests(CommandTestCase):

    def test_single_point(self):
        out = run(
            "approx_grid", "--gamma", "1.82", "--r-ave", "4.5",
            "--rs-min", "4.5", "--rs-max", "4.5", "--ra-min", "4.5", "--ra-max", "4.5", "--format", "csv",
        )
        for line in out.splitlines()[1:]:
            name, error, _, _, low, high = line.split(",")
            self.assertEqual((error, low, high), ("0.000000", "0.500000", "0.500000"))

    def test_invalid_step(self):
        self.assertExitCode(
            2, "approx_grid", "--gamma", "1.82", "--r-ave", "4.5",
            "--rs-min", "4", "--rs-max", "5", "--rs-step", "0", "--ra-min", "4", "--ra-max", "5",
        )

    def test_grid_too_large(self):
        self.assertExitCode(
            1, "approx_grid", "--gamma", "1.82", "--r-ave", "50",
            "--rs-min", "1", "--rs-max", "100", "--ra-min", "1", "--ra-max", "100", "--max-points", "100",
        )


    def test_max_points_must_be_positive(self):
        for bad in ("0", "-5"):
            self.assertExitCode(
                2, "approx_grid", "--gamma", "1.82", "--r-ave", "4.5",
                "--rs-min", "4", "--rs-max", "5", "--ra-min", "4", "--ra-max", "5", "--max-points", bad,
            )


class SimulateCommandTests(CommandTestCase):

    def test_fixed_seed_reproduces(self):
        first = run("simulate", "--seed", "7", "--format", "csv")
        self.assertEqual(first, run("simulate", "--seed", "7", "--format", "csv"))
        self.assertEqual(rows(first)["seed"], "7")

    @override_settings(PYTHAG_SEED=7)
    def test_seed_from_settings(self):
        self.assertEqual(run("simulate", "--format", "csv"), run("simulate", "--seed", "7", "--format", "csv"))

    def test_invalid_spread_is_usage_error(self):
        self.assertExitCode(2, "simulate", "--spread", "2.0")
        self.assertExitCode(2, "simulate", "--spread", "-0.1")

    def test_season_totals_convert_to_per_game(self):
        totals = run("simulate", "--seed", "7", "--unit", "total", "--r-ave", "729", "--spread", "40.5", "--format", "csv")
        per_game = run("simulate", "--seed", "7", "--spread", "0.25", "--format", "csv")
        self.assertEqual(totals, per_game)
        self.assertExitCode(2, "simulate", "--unit", "total", "--r-ave", "100", "--spread", "40")

    def test_zero_spread_cannot_be_fitted(self):
        self.assertExitCode(1, "simulate", "--spread", "0")

    def test_recovery_summary(self):
        values = rows(run("simulate", "--seed", "3", "--runs", "5", "--games", "1620", "--format", "csv"))
        self.assertEqual(values["runs"], "5")
        self.assertAlmostEqual(float(values["mean_gamma_hat"]), 1.82, delta=0.3)


class CoverageCommandTests(CommandTestCase):

    def test_summary(self):
        values = rows(run("coverage", "--seed", "11", "--runs", "100", "--format", "csv"))
        self.assertEqual(values["runs"], "100")
        self.assertEqual(values["seed"], "11")
        self.assertTrue(0.0 <= float(values["coverage"]) <= 1.0)

    def test_usage_errors(self):
        self.assertExitCode(2, "coverage", "--runs", "50")
        self.assertExitCode(2, "coverage", "--level", "95")
        self.assertExitCode(2, "coverage", "--r-ave", "1.0")


class PlotCommandTests(CommandTestCase):

    def test_writes_svg(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "2010.svg"
            out = run("plot", "--season", "2010", "--output", str(target))
            svg = target.read_text(encoding="utf-8")
        self.assertIn(str(target), out)
        self.assertEqual(svg.count("<circle"), 30)
        self.assertEqual(svg.count("<line"), 1)

    def test_missing_season(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertExitCode(1, "plot", "--season", "1850", "--output", str(Path(tmp) / "x.svg"))

    def test_unwritable_output(self):
        self.assertExitCode(1, "plot", "--season", "2010", "--output", "/nonexistent/dir/x.svg")
