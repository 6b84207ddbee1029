# -*- coding: utf-8 -*-

"""
"""

import logging
import sys

import click

from .const import (
    EXIT_BOUND_EXHAUSTED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    MAX_L,
    MAX_ROUNDS,
    MODE_ALL,
    MODES,
)
from .nielsen import default_max_l
from .pipeline import JobSpec, explain, run
from .pseudoperiodic import default_max_rounds
from .utils import BoundExhausted, InputError, dump_json


@click.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(dir_okay=False),
              help="Graph of groups (json)")
@click.option("--map", "map_path", default=None, type=click.Path(dir_okay=False),
              help="Train track map (json)")
@click.option("--family", "family_path", default=None, type=click.Path(dir_okay=False),
              help="Divisor sets I_v of the family (json)")
@click.option("--mode", default=MODE_ALL, type=click.Choice(MODES))
@click.option("--max-l", default=default_max_l, type=click.IntRange(min=1),
              help="Largest branch length of the pINP search")
@click.option("--max-rounds", default=default_max_rounds, type=click.IntRange(min=1),
              help="Saturation rounds of the Nielsen classes")
@click.option("--recheck", is_flag=True, help="Re-verify every certificate")
@click.option("--override", is_flag=True,
              help="Decide full irreducibility without a pseudo-atoroidal verdict")
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="Output file")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "text"]))
@click.option("-v", "--verbose", count=True, help="Increase the log level")
def main(graph_path, map_path, family_path, mode, max_l, max_rounds, recheck, override,
         out, fmt, verbose):
    """Decides pseudo-atoroidality and full irreducibility of GBS automorphisms"""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(message)s")
    job = JobSpec(
        graph=graph_path,
        map=map_path,
        family=family_path,
        mode=mode,
        params={MAX_L: max_l, MAX_ROUNDS: max_rounds},
        recheck=recheck,
        override=override,
    )
    try:
        report = run(job)
    except InputError as err:
        click.echo("input error in stage " + str(err.stage) + ": " + str(err), err=True)
        for diagnostic in err.diagnostics:
            click.echo("  " + str(diagnostic), err=True)
        sys.exit(EXIT_INPUT_ERROR)
    except BoundExhausted as err:
        click.echo("bound " + str(err.bound) + " exhausted: " + str(err), err=True)
        sys.exit(EXIT_BOUND_EXHAUSTED)
    if fmt == "json":
        text = dump_json(report, out)
    else:
        text = explain(report)
        if out is not None:
            with click.open_file(out, "w", encoding="utf-8") as f:
                click.echo(text, file=f)
    if out is None:
        click.echo(text)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
