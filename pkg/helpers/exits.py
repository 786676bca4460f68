"""Exit codes and the mapping from lab errors to them."""

import click
from rich import print as rprint
from rich.markup import escape

from percor.errors import PercorError, UnknownMethod

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CLAIMS = 3


class UsageFailure(click.UsageError):
    exit_code = EXIT_USAGE


def fail(error: Exception) -> None:
    """Report ``error`` and leave with its exit code."""
    if isinstance(error, UnknownMethod):
        raise UsageFailure(str(error)) from error
    if isinstance(error, (PercorError, OSError)):
        rprint(f"[bold red]❌ {escape(str(error))}[/bold red]")
        raise SystemExit(EXIT_IO)
    raise error
