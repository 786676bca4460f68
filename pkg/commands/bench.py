from pathlib import Path

import click

from helpers.config import load_scene
from helpers.exits import fail
from percor.errors import PercorError
from percor.methods import get_method
from services.bench import BenchService

DEFAULT_METHODS = "exact,midpoint,quad,bezier"


def register_bench_commands(cli):
    """Register the bench command with the CLI"""

    @cli.command()
    @click.argument("config")
    @click.option(
        "--methods",
        default=DEFAULT_METHODS,
        help=f"Comma-separated methods to compare (default: {DEFAULT_METHODS})",
    )
    @click.option("--csv", "csv_path", help="Write the comparison rows to this CSV file")
    @click.option("--diff-images", "diff_dir", help="Directory for |method - exact| difference images")
    def bench(config, methods, csv_path, diff_dir):
        """Compare texture-coordinate methods against exact division.

        Every method runs over every shape of the scene; the table shows the
        worst and mean error and the arithmetic each method spent.

        Examples:
          - bench scenes/tilted.scene
          - bench scenes/tilted.scene --methods midpoint,quad,bezier --csv bench.csv
          - bench scenes/tilted.scene --methods affine --diff-images diffs
        """
        names = [name.strip() for name in methods.split(",") if name.strip()]
        try:
            for name in names:
                get_method(name)
            scene = load_scene(config)
            BenchService.run(scene, names, csv_path, diff_dir, Path(config).parent)
        except (PercorError, OSError) as error:
            fail(error)

    return bench
