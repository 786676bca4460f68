import click
from rich.console import Console
from rich.table import Table
from dotenv import load_dotenv

load_dotenv()

from helpers.exits import EXIT_USAGE  # noqa: E402
from percor import ops  # noqa: E402
from percor.methods import METHODS  # noqa: E402
from services.claims import PERCOR_SEED, PERCOR_THREADS, worker_count  # noqa: E402
from commands.help import register_help_command  # noqa: E402
from commands.render import register_render_commands  # noqa: E402
from commands.bench import register_bench_commands  # noqa: E402
from commands.claims import register_claims_commands  # noqa: E402

console = Console()


class PercorGroup(click.Group):
    """Click group whose argument and option errors exit with the usage status."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as error:
            error.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as error:
            error.exit_code = EXIT_USAGE
            raise


@click.group(cls=PercorGroup)
@click.version_option(version="0.1.0")
def cli():
    """🧊 percor - perspective-correct shading and texturing lab"""


help_command = register_help_command(cli)
render_command = register_render_commands(cli)
bench_command = register_bench_commands(cli)
claims_command = register_claims_commands(cli)


@cli.command()
def methods():
    """List the texture-coordinate methods."""
    table = Table(title="Texture-coordinate Methods")
    table.add_column("Index", style="dim")
    table.add_column("Method", style="cyan")
    table.add_column("Description", style="green")

    for i, method in enumerate(METHODS.values(), 1):
        table.add_row(str(i), method.name, method.description)

    console.print(table)


@cli.command()
def settings():
    """Display current settings."""
    table = Table(title="Current Settings")
    table.add_column("Setting", style="cyan")
    table.add_column("Value", style="green")

    table.add_row("Claims workers (PERCOR_THREADS)", f"{PERCOR_THREADS} → {worker_count(PERCOR_THREADS)}")
    table.add_row("Scene seed (PERCOR_SEED)", str(PERCOR_SEED))
    table.add_row("Operation counting (PERCOR_COUNT_OPS)", "On ✅" if ops.COUNT_OPS else "Off ❌")
    table.add_row("Methods", str(len(METHODS)))

    console.print(table)


if __name__ == "__main__":
    cli()
