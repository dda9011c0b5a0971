from pathlib import Path

import click

from src.controllers.common import emit, handle_errors, load_ring, settings_of
from src.models.report import PfaffianReport
from src.services.constructions import BUILTIN_SKEW_MATRICES, builtin_skew_matrix, pfaffian_presentation
from src.services.ring_files import load_skew_file
from src.utils.config import DEFAULT_CHARACTERISTIC
from src.utils.errors import InputError


def load_matrix(source, char=None):
    """
    Resolve a matrix argument: a skew-matrix file or a builtin matrix name.

    :rtype: SkewMatrix
    :raises InputError: If the argument is neither
    """
    if Path(source).is_file():
        return load_skew_file(source, char)
    if source in BUILTIN_SKEW_MATRICES:
        return builtin_skew_matrix(source, char if char is not None else DEFAULT_CHARACTERISTIC)
    raise InputError(f"{source!r} is neither a matrix file nor a builtin matrix "
                     f"({', '.join(sorted(BUILTIN_SKEW_MATRICES))})")


@click.command('pfaffian')
@click.argument('matrix')
@click.option('--compare', 'compare_with', default=None, help='Ring file or builtin whose ideal to compare with.')
@click.pass_context
@handle_errors
def pfaffian_command(ctx, matrix, compare_with):
    """Sub-maximal Pfaffians of an odd skew-symmetric matrix."""
    settings = settings_of(ctx)
    skew = load_matrix(matrix, settings.char)
    presentation = pfaffian_presentation(skew, label=Path(matrix).stem)
    equal = None
    if compare_with is not None:
        # Compare over the matrix field unless --char says otherwise.
        other = load_ring(compare_with, settings.char if settings.char is not None else presentation.field.p)
        equal = presentation.same_ideal(other)
    report = PfaffianReport(
        size=skew.size,
        vars=list(skew.names),
        generators=list(presentation.ideal),
        compared_with=compare_with,
        ideals_equal=equal,
    )
    lines = [f"{index + 1}: {generator}" for index, generator in enumerate(report.generators)]
    if equal is not None:
        lines.append(f"ideals equal: {'true' if equal else 'false'}")
    emit(ctx, report, '\n'.join(lines))


commands = [pfaffian_command]
