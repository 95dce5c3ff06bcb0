import functools
import logging
from fractions import Fraction
from typing import Any, Mapping, Optional

import click
from pydantic import ValidationError

from ..repositories import GraphRepository
from ..repositories.GraphRepository import GraphRepositoryError
from ..schemas import ReportFormat, RunConfig
from ..services import AmplifyService, GraphService, ReductionService, WalkService
from ..services.AmplifyService import (
    InvalidAmplifyParametersError,
    InvalidFParametersError,
    NegativeInputError,
    PremiseUnmetError,
)
from ..services.GraphService import (
    EmptySetError,
    FullSetError,
    GraphServiceError,
    GraphTooLargeForExactOracleError,
    InvalidDeltaError,
    InvalidGapParametersError,
    InvalidVectorError,
    ZeroVectorError,
)
from ..services.ReductionService import ReductionServiceError
from ..services.WalkService import InvalidStepCountError, WalkServiceError
from .config import Settings
from .constants import ERROR_MESSAGES, EXIT_CODES
from .ReportUtils import flatten, render

logger = logging.getLogger("sse_amplify")

# First match wins, so specific classes come before their bases.
ERROR_EXIT_CODES = (
    (PremiseUnmetError, "NEGATIVE_ANSWER"),
    (GraphTooLargeForExactOracleError, "ORACLE_CAP"),
    (
        (
            InvalidGapParametersError,
            InvalidDeltaError,
            InvalidFParametersError,
            InvalidAmplifyParametersError,
            InvalidStepCountError,
            NegativeInputError,
            InvalidVectorError,
            ZeroVectorError,
            EmptySetError,
            FullSetError,
            ValidationError,
        ),
        "INVALID_PARAMETERS",
    ),
    ((GraphRepositoryError, GraphServiceError), "GRAPH_INPUT"),
    (WalkServiceError, "WALK_BACKEND"),
    (ReductionServiceError, "REDUCTION"),
)


class FractionType(click.ParamType):
    """Accepts decimals and exact fractions such as 1/3."""

    name = "fraction"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        try:
            return float(Fraction(str(value).strip()))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a number or a fraction", param, ctx)


FRACTION = FractionType()


class CommandServices:
    """Services wired for one command run, with settings read from the environment at start."""

    def __init__(self, exact_cap: Optional[int] = None):
        self.settings = Settings()
        self.graph_service = GraphService(self.settings, exact_cap=exact_cap)
        self.walk_service = WalkService(self.graph_service, self.settings)
        self.amplify_service = AmplifyService(self.graph_service, self.walk_service, self.settings)
        self.reduction_service = ReductionService(self.graph_service, self.settings)
        self.repository = GraphRepository(self.graph_service)


def translate_errors(command):
    """Turn service exceptions into exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit):
            raise
        except Exception as e:
            for error_types, code in ERROR_EXIT_CODES:
                if isinstance(e, error_types):
                    logger.error(f"{type(e).__name__}: {str(e)}")
                    click.echo(f"error: {type(e).__name__}: {e}", err=True)
                    raise click.exceptions.Exit(EXIT_CODES[code])
            logger.error(f"Unexpected error: {str(e)}", exc_info=True)
            click.echo(ERROR_MESSAGES["GENERAL_ERROR"], err=True)
            raise click.exceptions.Exit(EXIT_CODES["INTERNAL_ERROR"])

    return wrapper


def input_options(command):
    command = click.option(
        "--format",
        "report_format",
        type=click.Choice([f.value for f in ReportFormat]),
        default=ReportFormat.TEXT.value,
        show_default=True,
    )(command)
    command = click.option(
        "--exact-cap", type=click.IntRange(min=1), default=None,
        help="Largest n for the exact oracle (default SSE_AMPLIFY_EXACT_CAP).",
    )(command)
    command = click.option(
        "--allow-loops", is_flag=True, help="Accept i == j lines in the input."
    )(command)
    command = click.option(
        "--in", "input_path", required=True,
        type=click.Path(exists=True, dir_okay=False),
        help="Edge list: header 'n m', then 'i j w' lines.",
    )(command)
    return command


def parse_members(services: CommandServices, text: Optional[str]):
    return services.repository.parse_vertex_list(text) if text else ()


def emit(kind: str, fields: Mapping[str, Any], report_format: str) -> None:
    click.echo(render(kind, fields, ReportFormat(report_format)))


def emit_config(config: RunConfig) -> None:
    emit("config", flatten(config), config.report_format)


def fail_verification(message: str) -> None:
    logger.error(message)
    click.echo(f"error: {message}", err=True)
    raise click.exceptions.Exit(EXIT_CODES["VERIFICATION_FAILED"])
