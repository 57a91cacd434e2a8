"""Command-line front end: `qarray <boundstate|coupling|evolve|validate>`."""

import logging
import sys

import click
from termcolor import colored

from qarray.array_client import CavityArrayClient
from qarray.config import PRESETS, build_config
from qarray.errors import EXIT_OK, EXIT_USAGE, QArrayError
from qarray.log import announce, configure_logging

logger = logging.getLogger(__name__)


def cmd_boundstate(config, out_dir='.', progress=False):
    return CavityArrayClient(config, out_dir, progress).write_boundstate()


def cmd_coupling(config, out_dir='.', progress=False):
    return CavityArrayClient(config, out_dir, progress).write_coupling()


def cmd_evolve(config, out_dir='.', progress=False):
    return CavityArrayClient(config, out_dir, progress).write_evolve()


def cmd_validate(config, out_dir='.', progress=False):
    return CavityArrayClient(config, out_dir, progress).write_validate()


def run_options(f):
    f = click.option('--progress/--no-progress', default=True, help='Show progress bars for sweeps.')(f)
    f = click.option('--set', 'assignments', multiple=True, metavar='KEY=VALUE',
                     help='Override one configuration key; may be repeated.')(f)
    f = click.option('--out', 'out_dir', type=click.Path(file_okay=False), default='.', show_default=True,
                     help='Directory for the CSV files.')(f)
    f = click.option('--preset', type=click.Choice(sorted(PRESETS)), default=None,
                     help='Parameter set applied before the file and overrides.')(f)
    f = click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
                     help='key=value configuration file.')(f)
    return f


def _run(command, config_path, preset, out_dir, assignments, progress, extra=()):
    config = build_config(preset=preset, path=config_path, assignments=list(assignments) + list(extra))
    for path in command(config, out_dir, progress):
        announce('Wrote ' + path, colored('done', 'green'))


@click.group()
@click.option('-v', '--verbose', count=True, help='-v for info, -vv for debug output.')
def cli(verbose):
    """Parametric-drive-enhanced atom-atom interactions in a coupled-cavity array."""
    configure_logging(verbose)


@cli.command()
@run_options
def boundstate(config_path, preset, out_dir, assignments, progress):
    """Bound-state profile and summary (boundstate.csv, boundstate_summary.csv)."""
    _run(cmd_boundstate, config_path, preset, out_dir, assignments, progress)


@cli.command()
@run_options
def coupling(config_path, preset, out_dir, assignments, progress):
    """Atom-atom coupling and cooperativity over r and d (coupling.csv)."""
    _run(cmd_coupling, config_path, preset, out_dir, assignments, progress)


@cli.command()
@run_options
def evolve(config_path, preset, out_dir, assignments, progress):
    """Two-atom populations and fidelity over time (evolve_<engine>.csv)."""
    _run(cmd_evolve, config_path, preset, out_dir, assignments, progress)


@cli.command()
@run_options
@click.option('--force', is_flag=True, help='Run even when the regime check fails.')
def validate(config_path, preset, out_dir, assignments, progress, force):
    """Full driven model against the squeezed-frame model (fockcheck.csv)."""
    extra = ['force=true'] if force else []
    _run(cmd_validate, config_path, preset, out_dir, assignments, progress, extra)


def main(argv=None):
    """ Runs the CLI and returns its exit code

    0 success, 1 usage or configuration error, 2 parameter or physics error,
    3 validation failure.
    """
    try:
        cli.main(args=argv, prog_name='qarray', standalone_mode=False)
    except click.exceptions.Abort:
        click.echo('Aborted!', err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except QArrayError as e:
        click.echo(colored('Error: ', 'red', attrs=['bold']) + str(e), err=True)
        logger.debug('command failed', exc_info=True)
        return e.exit_code
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
