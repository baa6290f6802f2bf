"""
Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
import functools
import logging

import click
from dotenv import load_dotenv

from .. import __version__, configure_logging
from ..config import BaseConfig
from ..errors import ConfigError
from .commands import EXIT_CONFIG, STUDY_KINDS, dispatch
from .config_loader import parse_config

logger = logging.getLogger(__name__)


def _number_list(kind):
    """click callback turning '4,8,16' into a tuple of kind."""

    def convert(ctx, param, value):
        if value is None:
            return None
        try:
            return tuple(kind(part) for part in value.split(',') if part.strip())
        except ValueError:
            raise click.BadParameter(f"expected a comma-separated list, got '{value}'")

    return convert


def case_options(command):
    """Options shared by every command that builds a case."""
    decorators = [
        click.option('--config', 'config_path', type=click.Path(dir_okay=False),
                     help='TOML file with [case] and [run] sections'),
        click.option('--set', 'sets', multiple=True, metavar='KEY=VALUE',
                     help='Inline override; repeatable'),
        click.option('--case', help='Catalog case id (1, 11, 12, 211, 311, special-a..d)'),
        click.option('--order', type=int, help='Padé order N'),
        click.option('--keep-fraction', type=float, help='Fraction of the largest Padé terms kept'),
        click.option('--h', 'h', type=float, help='Element size in m'),
        click.option('--dt', type=float, help='Time step in s'),
        click.option('--T', 'T', type=float, help='Final time in s'),
        click.option('--desk/--paper', 'desk', default=None, help='Desk or paper-scale profile'),
        click.option('--out', type=click.Path(file_okay=False), help='Output directory'),
        click.option('--stride', type=int, help='Record every stride-th step'),
        click.option('--dump-system', type=click.Path(file_okay=False),
                     help='Write M, C and K in Matrix Market format to this directory'),
        click.option('--allow-incompatible', is_flag=True, default=False,
                     help='Accept a_s, a_f violating c_s/a_s = c_f/a_f'),
        click.option('--corner', type=click.Choice(['ode', 'neumann']), help='Corner closure'),
        click.option('--compat-mode', type=click.Choice(['a', 'b']), help='Compatibility coefficient choice'),
    ]
    for decorator in reversed(decorators):
        command = decorator(command)
    return command


def _flags(desk=None, allow_incompatible=False, **values):
    flags = {key: value for key, value in values.items() if value is not None}
    if desk is not None:
        flags['profile'] = 'desk' if desk else 'paper'
    if allow_incompatible:
        flags['allow_incompatible'] = True
    return flags


def with_run_config(command):
    """Parse --config, --set and the case flags into a RunConfig passed as 'config'."""

    @functools.wraps(command)
    def wrapper(config_path=None, sets=(), **kwargs):
        flag_names = ('case', 'order', 'keep_fraction', 'h', 'dt', 'T', 'desk', 'out', 'stride',
                      'dump_system', 'allow_incompatible', 'corner', 'compat_mode')
        flag_values = {name: kwargs.pop(name, None) for name in flag_names}
        try:
            config = parse_config(config_path, sets, _flags(**flag_values))
        except ConfigError as e:
            logger.error(f"Invalid configuration ({e.key}): {str(e)}")
            click.get_current_context().exit(EXIT_CONFIG)
        return command(config=config, **kwargs)

    return wrapper


def _finish(command, config, **options):
    click.get_current_context().exit(dispatch(command, config, **options))


@click.group()
@click.version_option(version=__version__, prog_name="habc")
def cli():
    """Coupled surface/basin wave simulator with Padé-type absorbing boundaries."""
    configure_logging(BaseConfig)


@cli.command()
@case_options
@click.option('--no-reference', is_flag=True, help='Skip the reference run and the errors')
@with_run_config
def run(config, no_reference):
    """Run a case; with a reference domain also its errors."""
    _finish('run', config, no_reference=no_reference)


@cli.command()
@case_options
@with_run_config
def reference(config):
    """Run the enlarged reference domain of a case."""
    _finish('reference', config)


@cli.command()
@case_options
@click.option('--factor', type=float, default=10.0, show_default=True,
              help='Basin energy growth after T_excit flagged as unstable')
@with_run_config
def compare(config, factor):
    """Compatible coefficients against a_s = a_f = 1."""
    _finish('compare', config, factor=factor)


@cli.command()
@case_options
@click.option('--kind', type=click.Choice(STUDY_KINDS), default='convergence', show_default=True)
@click.option('--orders', callback=_number_list(int), help='Comma-separated Padé orders')
@click.option('--keep-fractions', callback=_number_list(float), help='Comma-separated keep fractions')
@click.option('--meshes', callback=_number_list(float), help='Comma-separated element sizes')
@click.option('--levels', type=int, default=3, show_default=True, help='Mesh halvings when --meshes is absent')
@click.option('--variants', callback=_number_list(str), help='Obstacle-study variants (a,b,c,d)')
@with_run_config
def study(config, kind, orders, keep_fractions, meshes, levels, variants):
    """Convergence, reduction or obstacle time-step study."""
    _finish('study', config, kind=kind, orders=orders, keep_fractions=keep_fractions, meshes=meshes,
            levels=levels, variants=variants)


@cli.command('bench-wave')
@case_options
@click.option('--orders', callback=_number_list(int), help='Comma-separated Padé orders')
@with_run_config
def bench_wave(config, orders):
    """Wave-equation benchmark: Gaussian pulse in an absorbing box."""
    _finish('bench-wave', config, orders=orders)


@cli.command('pade-table')
@case_options
@click.option('--orders', callback=_number_list(int), help='Comma-separated Padé orders')
@click.option('--thresholds', callback=_number_list(float), help='Comma-separated thresholds')
@with_run_config
def pade_table(config, orders, thresholds):
    """Number of Padé coefficients above each threshold."""
    _finish('pade-table', config, orders=orders, thresholds=thresholds)


@cli.command('pade-error')
@case_options
@click.option('--orders', callback=_number_list(int), help='Comma-separated Padé orders')
@click.option('--xmax', type=float, default=100.0, show_default=True)
@click.option('--points', type=int, default=201, show_default=True)
@with_run_config
def pade_error(config, orders, xmax, points):
    """|f_N(X) - sqrt(1 + X)| on [0, xmax]."""
    _finish('pade-error', config, orders=orders, xmax=xmax, points=points)


@cli.command()
@click.argument('csv_path', type=click.Path(dir_okay=False))
@click.option('--columns', callback=_number_list(str), help='Comma-separated y columns')
@click.option('--x', 'x', help='x column (default: the first one)')
@click.option('--log', is_flag=True, help='log10 y-axis')
@click.option('--title')
@click.option('--output', type=click.Path(dir_okay=False), help='SVG path')
@case_options
@with_run_config
def plot(config, csv_path, columns, x, log, title, output):
    """Render CSV columns as an SVG line plot."""
    _finish('plot', config, csv_path=csv_path, columns=list(columns) if columns else None, x=x,
            log=log, title=title, output=output)


def main(argv=None):
    load_dotenv()
    cli.main(args=argv, prog_name='habc')
