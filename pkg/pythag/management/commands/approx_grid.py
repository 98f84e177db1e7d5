"""
approx_grid: worst-case error of each approximant over a run range

Example, the range of the 1991-2011 team seasons in season totals:

    python manage.py approx_grid --gamma 1.88 --r-ave 721 --unit total \
        --rs-min 513 --rs-max 859 --ra-min 581 --ra-max 845
"""

from django.conf import settings
from pydantic import ValidationError

from pythag.services.errors import describe
from pythag.services.report import GridAxis, approx_grid, render_grid

from ._base import PythagCommand, usage_error


class Command(PythagCommand):
    help = "Compare the approximants with the exact formula on an rs x ra grid"

    def add_arguments(self, parser):
        parser.add_argument("--gamma", type=float, required=True)
        parser.add_argument("--r-ave", type=float, required=True)
        parser.add_argument("--rs-min", type=float, required=True)
        parser.add_argument("--rs-max", type=float, required=True)
        parser.add_argument("--rs-step", type=float, default=1.0)
        parser.add_argument("--ra-min", type=float, required=True)
        parser.add_argument("--ra-max", type=float, required=True)
        parser.add_argument("--ra-step", type=float, default=1.0)
        parser.add_argument("--max-points", type=int, default=None, help="default: PYTHAG_MAX_GRID_POINTS")
        self.add_unit_argument(parser)
        self.add_format_argument(parser)

    def handle(self, *args, **options):
        try:
            rs_axis = GridAxis(low=options["rs_min"], high=options["rs_max"], step=options["rs_step"])
            ra_axis = GridAxis(low=options["ra_min"], high=options["ra_max"], step=options["ra_step"])
        except ValidationError as e:
            raise usage_error(f"invalid grid: {describe(e)}") from e

        max_points = options["max_points"]
        if max_points is None:
            max_points = settings.PYTHAG_MAX_GRID_POINTS
        elif max_points < 1:
            raise usage_error(f"--max-points must be at least 1, got {max_points}")
        report = approx_grid(
            options["gamma"], options["r_ave"], rs_axis, ra_axis, self.unit(options), max_points,
        )
        return render_grid(report, options["format"])
