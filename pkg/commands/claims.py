import click

from helpers.exits import EXIT_CLAIMS, fail
from percor.analysis import FAULTS
from services.claims import PERCOR_SEED, PERCOR_THREADS, ClaimsService


def register_claims_commands(cli):
    """Register the claims command with the CLI"""

    @cli.command()
    @click.option("--csv", "csv_path", help="Write every claim row to this CSV file")
    @click.option("--seed", default=PERCOR_SEED, show_default=True, help="Scene-generation seed")
    @click.option("--threads", default=PERCOR_THREADS, show_default=True, help="Workers, 0 for one per CPU")
    @click.option("--inject-fault", type=click.Choice(FAULTS), hidden=True)
    def claims(csv_path, seed, threads, inject_fault):
        """Check the error bounds and operation counts of every method.

        Exits with status 3 when any claim fails.

        Examples:
          - claims
          - claims --csv claims.csv
        """
        reports = ClaimsService.run(seed=seed, threads=threads, inject_fault=inject_fault)
        try:
            passed = ClaimsService.report(reports, csv_path)
        except OSError as error:
            fail(error)
        if not passed:
            raise SystemExit(EXIT_CLAIMS)

    return claims
