from pathlib import Path

from django.core.management.base import CommandError

from pythag.services.estimator import fit_dataset
from pythag.services.ingest import build_season_dataset
from pythag.services.report import scatter_svg

from ._base import FAILURE, PythagCommand


class Command(PythagCommand):
    help = "Write an SVG scatter of winning percentage against run differential"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--season", type=int, required=True)
        parser.add_argument("--output", required=True, help="SVG file to write")
        self.add_alpha_argument(parser)

    def handle(self, *args, **options):
        dataset = build_season_dataset(self.records(options), options["season"])
        fit, estimate = fit_dataset(dataset, alpha=self.alpha(options))
        svg = scatter_svg(dataset, fit, estimate)

        output = Path(options["output"])
        try:
            output.write_text(svg, encoding="utf-8")
        except OSError as e:
            raise CommandError(f"cannot write {output}: {e.strerror or e}", returncode=FAILURE) from e
        if options["verbosity"] >= 1:
            self.stdout.write(f"wrote {output}")
