import logging

import click

from .commands import *
from .utils.config import settings
from .utils.constants import EXIT_CODES


class AmplifyGroup(click.Group):
    """Reports command-line usage errors with their own exit code."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_CODES["USAGE"]
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_CODES["USAGE"]
            raise


@click.group(cls=AmplifyGroup)
@click.option("--verbose", is_flag=True, help="Log progress at debug level.")
def cli(verbose):
    """Gap amplification for small set expansion through lazy random walks."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


cli.add_command(amplify)
cli.add_command(profile)
cli.add_command(classify)
cli.add_command(extract)
cli.add_command(regularize)
cli.add_command(peel)
cli.add_command(verify)


def run():
    cli(prog_name="sse-amplify")
