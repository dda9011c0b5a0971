import click

from src.controllers.common import emit, handle_errors, list_text, settings_of
from src.models.report import SeriesReport
from src.services.series import (IntSeries, ci_codepth3_quotient_display, codepth3_gorenstein_quotient_rational,
                                 codepth3_gorenstein_rational, ezd_rational, format_terms, ggo_denominator_factored,
                                 ggo_rational, ggo_series, gh_display, golod_rational, gulliksen_ci_rational,
                                 gulliksen_trivext_series, la_quotient_series, polynomial_equal, rossi_sega_rational,
                                 trivext_closed_forms)
from src.utils.errors import InputError

FORMULAS = ('golod', 'la', 'thg', 'trivext', 'codepth3', 'codepth3-quotient', 'ezd', 'rossi-sega', 'ggo', 'gh')


def parse_coefficients(text, option):
    """Comma separated integers, e.g. ``6,8,3``."""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise InputError(f"{option} expects comma separated integers, got {text!r}") from None


def _require(value, option, formula):
    if value is None:
        raise InputError(f"formula {formula!r} needs {option}")
    return value


def series_of(formula, depth, e=None, h=None, mu=None, pqr=None, poincare=None, ring_depth=0):
    """
    Expand a named closed form.

    :param formula: One of FORMULAS
    :param depth: Cutoff D
    :return: The coefficients, the rational function when there is one, and extra text lines
    :rtype: tuple[IntSeries, RationalFn or None, list[str]]
    :raises InputError: On a missing or inadmissible parameter
    """
    notes = []
    if formula == 'golod':
        rational = golod_rational(_require(e, '--e', formula), ring_depth,
                                  parse_coefficients(_require(h, '--h', formula), '--h'))
    elif formula == 'la':
        P = IntSeries(parse_coefficients(_require(poincare, '--poincare', formula), '--poincare'))
        return la_quotient_series(P, depth), None, notes
    elif formula == 'thg':
        rational = gulliksen_ci_rational(_require(e, '--e', formula))
    elif formula == 'trivext':
        P_R, P_E, P_T = trivext_closed_forms(_require(e, '--e', formula))
        series = gulliksen_trivext_series(P_R.expand(depth), P_E.expand(depth), depth)
        if series != P_T.expand(depth):
            notes.append('closed form and Gulliksen identity differ')
        notes.append(f"P_R = {P_R}")
        notes.append(f"P_E = {P_E}")
        notes.append(f"denominator degree of P_T: {P_T.denominator_degree}")
        return series, P_T, notes
    elif formula == 'codepth3':
        rational = codepth3_gorenstein_rational(_require(mu, '--mu', formula))
    elif formula == 'codepth3-quotient':
        rational = codepth3_gorenstein_quotient_rational(_require(mu, '--mu', formula))
        notes.append(f"complete intersection quotient: {ci_codepth3_quotient_display()}")
    elif formula == 'ezd':
        rational = ezd_rational(_require(e, '--e', formula))
    elif formula == 'rossi-sega':
        rational = rossi_sega_rational(_require(e, '--e', formula),
                                       parse_coefficients(_require(pqr, '--pqr', formula), '--pqr'))
    elif formula == 'ggo':
        values = parse_coefficients(_require(h, '--h', formula), '--h')
        if len(values) != 1:
            raise InputError(f"formula 'ggo' needs a single integer --h, got {h!r}")
        value = values[0]
        rational = ggo_rational(value)
        factored = polynomial_equal(rational.denominator, ggo_denominator_factored(value))
        notes.append(f"denominator equals (1 + z)^2*({format_terms([1, -2, -(value - 2), -4])}): "
                     f"{'true' if factored else 'false'}")
        return ggo_series(value, depth), rational, notes
    elif formula == 'gh':
        rational = gh_display(e if e is not None else 4)
        notes.append(f"normalized: {rational.normalized()}")
    else:
        raise InputError(f"unknown formula {formula!r}; expected one of {', '.join(FORMULAS)}")
    return rational.expand(depth), rational, notes


@click.command('series')
@click.argument('formula', type=click.Choice(FORMULAS))
@click.option('--e', 'e', type=click.IntRange(min=1), default=None, help='Embedding dimension.')
@click.option('--h', 'h', default=None, help='Homology dimensions h_1,h_2,... (ggo: the integer h).')
@click.option('--mu', type=click.IntRange(min=1), default=None, help='Number of generators of I.')
@click.option('--pqr', default=None, help='Coefficients of P^Q_R, constant term first.')
@click.option('--poincare', default=None, help='Coefficients of a Poincare series, constant term first.')
@click.option('--ring-depth', type=click.IntRange(min=0), default=0, show_default=True,
              help='Depth d of the ring in the Golod bound.')
@click.option('-D', '--D', 'series_depth', type=click.IntRange(min=0), default=None,
              help='Cutoff (default: the global --depth).')
@click.pass_context
@handle_errors
def series_command(ctx, formula, e, h, mu, pqr, poincare, ring_depth, series_depth):
    """Expand a closed-form Poincare series to z^D."""
    depth = series_depth if series_depth is not None else settings_of(ctx).depth
    series, rational, notes = series_of(formula, depth, e=e, h=h, mu=mu, pqr=pqr, poincare=poincare,
                                        ring_depth=ring_depth)
    params = {key: str(value) for key, value in
              (('e', e), ('h', h), ('mu', mu), ('pqr', pqr), ('poincare', poincare)) if value is not None}
    if ring_depth:
        params['ring_depth'] = str(ring_depth)
    report = SeriesReport(
        formula=formula,
        params=params,
        depth=depth,
        coefficients=series.coefficients,
        rational=str(rational) if rational is not None else None,
        denominator_degree=rational.denominator_degree if rational is not None else None,
    )
    lines = [list_text(series.coefficients)]
    if rational is not None:
        lines.append(f"= {rational}")
    lines += notes
    emit(ctx, report, '\n'.join(lines))


commands = [series_command]
