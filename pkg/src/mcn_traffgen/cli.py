# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Main CLI module for MCN Traffgen."""

import click

from mcn_traffgen.commands.analyze import analyze
from mcn_traffgen.commands.common import configure_logging, debug_option
from mcn_traffgen.commands.config import config
from mcn_traffgen.commands.disttest import disttest
from mcn_traffgen.commands.fit import fit
from mcn_traffgen.commands.generate import generate
from mcn_traffgen.commands.to5g import to5g
from mcn_traffgen.commands.validate import validate, validate_model
from mcn_traffgen.constants import __version__


@click.group(
    help="MCN Traffgen - Mobile core network control-plane traffic generator."
)
@click.version_option(version=__version__, prog_name="mcn-traffgen")
@debug_option
@click.pass_context
def main(ctx: click.Context, debug: bool) -> None:
    """Main CLI entry point."""
    ctx.ensure_object(dict)
    ctx.obj["debug"] = debug
    configure_logging(debug)


main.add_command(fit)
main.add_command(generate)
main.add_command(validate)
main.add_command(validate_model)
main.add_command(analyze)
main.add_command(disttest)
main.add_command(to5g)
main.add_command(config)


if __name__ == "__main__":
    main()
