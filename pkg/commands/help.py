import click
from rich.console import Console
from rich.table import Table
from rich import print as rprint

console = Console()

# help table sections, in display order
COMMAND_CATEGORIES = {
    "Drawing": ["render"],
    "Measuring": ["bench", "claims"],
    "Other": ["methods", "settings", "help"],
}

# section for commands missing from the table above
DEFAULT_CATEGORY = "Other"


def categorize(commands: dict[str, str]) -> dict[str, list[tuple[str, str]]]:
    """Group (name, help) pairs by category, sorted by name within each."""
    grouped = {category: [] for category in COMMAND_CATEGORIES}
    grouped.setdefault(DEFAULT_CATEGORY, [])
    for name, text in commands.items():
        category = next((c for c, names in COMMAND_CATEGORIES.items() if name in names), DEFAULT_CATEGORY)
        grouped[category].append((name, text))
    for entries in grouped.values():
        entries.sort(key=lambda x: x[0])
    return grouped


def register_help_command(cli):
    @cli.command()
    @click.argument("command_name", required=False)
    def help(command_name=None):
        """Show help for percor commands.

        With COMMAND_NAME, print that command's full option help instead.
        """
        ctx = click.Context(cli, info_name="percor", parent=None)

        if command_name:
            cmd = cli.get_command(ctx, command_name)
            if cmd:
                rprint(f"[bold blue]Help for command [cyan]{command_name}[/cyan]:[/bold blue]\n")
                click.echo(cmd.get_help(ctx))
            else:
                rprint(f"[bold red]Error:[/bold red] Command '{command_name}' not found.")
            return

        rprint("\n[bold blue]🧊 percor - perspective-correct shading and texturing lab[/bold blue]")
        rprint(
            "\npercor draws textured scenes with exact or approximate texture-coordinate "
            "methods and measures each approximation against division per pixel."
        )

        all_commands = {}
        for cmd_name in cli.list_commands(ctx):
            cmd = cli.get_command(ctx, cmd_name)
            all_commands[cmd_name] = cmd.short_help or (cmd.help or "").split("\n")[0]

        rprint("\n[bold cyan]Available Commands:[/bold cyan]")
        table = Table()
        table.add_column("Category", style="blue")
        table.add_column("Command", style="green")
        table.add_column("Description", style="cyan")

        grouped = categorize(all_commands)
        categories = [c for c in grouped if grouped[c]]
        for category in categories:
            for i, (cmd_name, help_text) in enumerate(grouped[category]):
                table.add_row(category if i == 0 else "", cmd_name, help_text)
            if category != categories[-1]:
                table.add_row("", "", "")

        console.print(table)

        rprint("\n[bold cyan]Usage Examples:[/bold cyan]")
        rprint("  • [green]render scenes/tilted.scene --out tilted.ppm[/green] - Draw a scene")
        rprint("  • [green]bench scenes/tilted.scene --methods midpoint,quad[/green] - Compare methods")
        rprint("  • [green]claims --csv claims.csv[/green] - Check every error bound")
        rprint("  • [green]methods[/green] - List the texture-coordinate methods")

    return help
