import click

from src.controllers.common import Settings
from src.utils.config import DEFAULT_DEPTH, DEFAULT_SEED
from src.utils.logger import configure_logging
from src.utils.validators import validate_prime


def _check_char(ctx, param, value):
    if value is not None and not validate_prime(value):
        raise click.BadParameter(f"{value} is not a prime below 2^31")
    return value


def create_app():
    """
    Create the command group with its global flags and register the controllers.

    :return: Configured command group
    :rtype: click.Group
    """
    @click.group(name='artin', context_settings={'help_option_names': ['-h', '--help']})
    @click.option('--char', type=int, default=None, callback=_check_char,
                  help='Characteristic p of the coefficient field (overrides ring files).')
    @click.option('--json', 'as_json', is_flag=True, help='Emit JSON reports.')
    @click.option('--depth', type=click.IntRange(min=0), default=DEFAULT_DEPTH, show_default=True,
                  help='Cutoff D for resolutions and series.')
    @click.option('--seed', type=click.IntRange(min=0, max=2 ** 64 - 1), default=DEFAULT_SEED, show_default=True,
                  help='Seed of every randomised step.')
    @click.option('--jobs', type=click.IntRange(min=1), default=1, show_default=True,
                  help='Worker processes across input files.')
    @click.option('--deep', is_flag=True, help='Allow depths beyond the configured limit.')
    @click.option('-v', '--verbose', is_flag=True, help='Log progress to stderr.')
    @click.pass_context
    def app(ctx, char, as_json, depth, seed, jobs, deep, verbose):
        """Artinian local algebras: Koszul homology, Betti numbers and Golod verdicts."""
        configure_logging('INFO' if verbose else None)
        ctx.obj = Settings(char=char, json=as_json, depth=depth, seed=seed, jobs=jobs, verbose=verbose, deep=deep)

    # Register controllers
    from src.controllers.ring_controller import commands as ring_commands
    from src.controllers.series_controller import commands as series_commands
    from src.controllers.pfaffian_controller import commands as pfaffian_commands
    for command in ring_commands + series_commands + pfaffian_commands:
        app.add_command(command)

    return app


def main():
    create_app()(prog_name='artin')


if __name__ == '__main__':
    main()
