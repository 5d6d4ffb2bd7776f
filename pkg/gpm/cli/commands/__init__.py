"""Subcommand implementations"""

import sys

import click


def abort(error: Exception) -> None:
    """Report a runtime failure on stderr and exit 1"""
    click.echo(f"Error: {error}", err=True)
    sys.exit(1)
