import click

from ..schemas import ReportFormat, RunConfig
from ..services import GraphService, VerificationService
from ..utils.CommandUtils import emit, emit_config, fail_verification, translate_errors
from ..utils.config import settings
from ..utils.constants import ERROR_MESSAGES
from ..utils.ReportUtils import flatten


@click.command("verify")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--quick", is_flag=True, help="Run every suite at reduced counts.")
@click.option("--power-n", type=click.IntRange(min=2), default=120, show_default=True,
              help="Size of the dense powering instance (t = 1024).")
@click.option("--format", "report_format", type=click.Choice([f.value for f in ReportFormat]),
              default=ReportFormat.TEXT.value, show_default=True)
@translate_errors
def verify(seed, quick, power_n, report_format):
    """Run the randomized property suites; exit 8 on any violation."""
    config = RunConfig(
        command="verify",
        seed=seed,
        exact_cap=settings.EXACT_CAP,
        report_format=report_format,
    )
    reports = VerificationService(GraphService(settings), settings).run_all(
        seed=seed, quick=quick, power_n=power_n
    )

    emit_config(config)
    for report in reports:
        fields = flatten(report)
        fields["passed"] = report.passed
        emit("suite", fields, report_format)

    if not all(report.passed for report in reports):
        fail_verification(ERROR_MESSAGES["VERIFICATION_FAILED"])
