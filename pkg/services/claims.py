import os
from pathlib import Path
from typing import Optional

from rich import print as rprint
from rich.console import Console
from rich.table import Table

from percor.analysis import ErrorReport, claims_suite, write_csv

# Claims suite configuration
PERCOR_THREADS = int(os.getenv("PERCOR_THREADS", "1"))
PERCOR_SEED = int(os.getenv("PERCOR_SEED", "42"))

console = Console()


def worker_count(threads: int = PERCOR_THREADS) -> int:
    """Zero or negative means one worker per CPU."""
    return threads if threads > 0 else os.cpu_count() or 1


class ClaimsService:
    """Runs the quantitative claims and reports them"""

    @staticmethod
    def run(
        seed: int = PERCOR_SEED,
        threads: int = PERCOR_THREADS,
        inject_fault: Optional[str] = None,
    ) -> list[ErrorReport]:
        workers = worker_count(threads)
        rprint(f"🔬 Running claims with seed {seed} on {workers} worker(s)...")
        return claims_suite(seed=seed, workers=workers, inject_fault=inject_fault)

    @staticmethod
    def print_reports(reports: list[ErrorReport]) -> None:
        table = Table(title="📋 Claims")
        table.add_column("Group", style="cyan", no_wrap=True)
        table.add_column("Claim", style="magenta")
        table.add_column("Bound", justify="right")
        table.add_column("Measured", justify="right", style="yellow")
        table.add_column("Result", justify="center")
        table.add_column("Note", style="dim")
        for report in reports:
            for row in report.claims:
                if not row.fatal:
                    result = "[dim]info[/dim]"
                elif row.passed:
                    result = "[green]✅[/green]"
                else:
                    result = "[bold red]❌[/bold red]"
                table.add_row(
                    report.method,
                    row.claim,
                    f"{row.bound:.4g}",
                    f"{row.measured:.4g}",
                    result,
                    row.note,
                )
        console.print(table)

    @staticmethod
    def summarize(reports: list[ErrorReport]) -> bool:
        """Print the verdict; True when every fatal claim holds."""
        failed = [
            f"{report.method}: {row.claim}"
            for report in reports
            for row in report.claims
            if row.fatal and not row.passed
        ]
        total = sum(1 for report in reports for row in report.claims if row.fatal)
        if failed:
            rprint(f"[bold red]❌ {len(failed)} of {total} claims failed:[/bold red]")
            for name in failed:
                rprint(f"   • {name}")
            return False
        rprint(f"[bold green]✅ All {total} claims hold[/bold green]")
        return True

    @staticmethod
    def report(reports: list[ErrorReport], csv_path: Optional[str | Path] = None) -> bool:
        ClaimsService.print_reports(reports)
        if csv_path:
            write_csv(reports, csv_path)
            rprint(f"📝 CSV written to {csv_path}")
        return ClaimsService.summarize(reports)
