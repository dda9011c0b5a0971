import click

from src.controllers.common import (document_of, emit, handle_errors, list_text, load_ring, run_inputs,
                                    settings_of, tuple_text, yes_no)
from src.models.report import BettiReport, BuiltinReport, QuotientReport, TrivextReport
from src.models.report import EzdReport as EzdReportModel
from src.services.algebra import (compile_ring, hilbert, is_compressed, is_gorenstein, presentation_of,
                                  quotient_power, ring_type)
from src.services.analysis import analyze, betti_summary, ezd_summary, ring_echo
from src.services.constructions import builtin, builtin_names, ezd_search, trivial_extension
from src.services.koszul import is_complete_intersection
from src.services.resolution import betti_of_residue_field, verify_exactness
from src.utils.config import DEFAULT_CHARACTERISTIC, EZD_DEFAULT_BUDGET, EZD_DEFAULT_MODE, EZD_MODES


def _ring_lines(echo):
    lines = [f"ring: {echo.label or '(unnamed)'} over GF({echo.char}) in {', '.join(echo.vars)}"]
    if echo.ideal is not None:
        lines.append(f"ideal: {', '.join(echo.ideal)}")
    lines.append(f"basis ({echo.dim}): {', '.join(echo.basis)}")
    return lines


def _verdict_lines(prefix, classification, golod):
    lines = [f"{prefix}class: {classification.description}"]
    if classification.witness is not None:
        witness = classification.witness
        lines.append(f"{prefix}  witness: degrees {tuple_text(witness.degrees)}, "
                     f"classes {tuple_text(witness.classes)}")
    for note in classification.notes:
        lines.append(f"{prefix}  note: {note}")
    lines.append(f"{prefix}golod: {golod.description}")
    return lines


def analysis_text(report):
    """Plain-text rendering of an analysis report."""
    flags = report.flags
    lines = _ring_lines(report.ring)
    lines += [
        f"hilbert: {tuple_text(report.hilbert)}",
        f"socle degree: {report.socle_degree}",
        f"embedding dimension: {report.embedding_dimension}",
        f"type: {report.type}",
        f"gorenstein: {yes_no(flags.gorenstein)}",
        f"compressed: {yes_no(flags.compressed)}",
        f"complete intersection: {yes_no(flags.complete_intersection)}",
        f"mu(I): {report.mu_presentation}",
        f"koszul homology: {tuple_text(report.koszul_dims)}",
        f"P^Q_R: {report.tor_polynomial}",
    ]
    lines += _verdict_lines('', report.classification, report.golod)
    if report.ezd is not None:
        ezd = report.ezd
        text = f"ezd: {ezd.status} ({ezd.mode}, {ezd.scope}, {ezd.consumed}/{ezd.budget} candidates)"
        if ezd.found:
            text += f"; a = {ezd.witness}, (0:a) = ({ezd.generator})"
        lines.append(text)
    if report.betti is not None:
        lines.append(f"betti of k up to {report.betti.depth}: {list_text(report.betti.values)}")
    if flags.koszul_consistent_up_to is not None:
        lines.append(f"koszul consistent up to: {flags.koszul_consistent_up_to}")
    if report.quotient is not None:
        quotient = report.quotient
        lines.append(f"quotient R/m^{quotient.exponent}: dim {quotient.dim}, hilbert {tuple_text(quotient.hilbert)}")
        lines.append(f"  koszul homology: {tuple_text(quotient.koszul_dims)}")
        lines += _verdict_lines('  ', quotient.classification, quotient.golod)
        if quotient.betti is not None:
            lines.append(f"  betti of k up to {quotient.betti.depth}: {list_text(quotient.betti.values)}")
        if quotient.homology_check is not None:
            check = quotient.homology_check
            lines.append(f"  homology prediction {tuple_text(check.predicted)}: "
                         f"{'agrees' if check.agree else 'differs'}")
    for comparison in report.series:
        lines.append(f"series {comparison.name}: agree up to {comparison.agree_up_to} "
                     f"(expected {list_text(comparison.expected)}; computed {list_text(comparison.computed)})")
    return '\n'.join(lines)


def _analyze_worker(source, settings, betti=None, ezd=None, budget=EZD_DEFAULT_BUDGET, quotient=None,
                    quotient_betti=False):
    pr = load_ring(source, settings.char)
    report = analyze(pr, depth=settings.depth, betti_depth=betti, ezd_mode=ezd, ezd_budget=budget,
                     seed=settings.seed, quotient=quotient, quotient_betti=quotient_betti,
                     allow_deep=settings.deep)
    return document_of(report), analysis_text(report)


@click.command('analyze')
@click.argument('rings', nargs=-1, required=True)
@click.option('--ezd', type=click.Choice(EZD_MODES), default=None, help='Search for an exact zero divisor.')
@click.option('--budget', type=click.IntRange(min=1), default=EZD_DEFAULT_BUDGET, show_default=True,
              help='Candidate budget of the exact zero divisor search.')
@click.option('--betti', type=click.IntRange(min=0), default=None, help='Resolve k over R to this depth.')
@click.option('--quotient', type=click.IntRange(min=2), default=None,
              help='Exponent q of the quotient R/m^q (default: the socle degree).')
@click.option('--quotient-betti', is_flag=True, help='Resolve k over the quotient and compare series.')
@click.pass_context
@handle_errors
def analyze_command(ctx, rings, ezd, budget, betti, quotient, quotient_betti):
    """Analyse one or more rings (files or builtin names)."""
    run_inputs(ctx, _analyze_worker, rings, betti=betti, ezd=ezd, budget=budget, quotient=quotient,
               quotient_betti=quotient_betti)


@click.command('quotient')
@click.argument('ring')
@click.argument('exponent', type=int)
@click.pass_context
@handle_errors
def quotient_command(ctx, ring, exponent):
    """Compile R/m^EXPONENT."""
    settings = settings_of(ctx)
    algebra = compile_ring(load_ring(ring, settings.char))
    quotient = quotient_power(algebra, exponent)
    report = QuotientReport(ring=ring_echo(algebra), exponent=exponent, quotient=ring_echo(quotient),
                            hilbert=hilbert(quotient))
    lines = _ring_lines(report.ring)
    lines.append(f"R/m^{exponent}: dim {quotient.dim}, hilbert {tuple_text(report.hilbert)}")
    lines.append(f"basis: {', '.join(report.quotient.basis)}")
    emit(ctx, report, '\n'.join(lines))


def _betti_worker(source, settings, check=False):
    algebra = compile_ring(load_ring(source, settings.char))
    table = betti_of_residue_field(algebra, settings.depth, settings.deep)
    exact = verify_exactness(table) if check else None
    report = BettiReport(ring=ring_echo(algebra), betti=betti_summary(table), exact=exact)
    text = f"{report.ring.label}: {list_text(table.values)}"
    if check:
        text += "\nresolution maps compose to zero: true"
    return document_of(report), text


@click.command('betti')
@click.argument('rings', nargs=-1, required=True)
@click.option('--check', is_flag=True, help='Also check that consecutive maps compose to zero.')
@click.pass_context
@handle_errors
def betti_command(ctx, rings, check):
    """Betti numbers of the residue field up to the global --depth."""
    run_inputs(ctx, _betti_worker, rings, check=check)


def _trivext_worker(source, settings):
    algebra = compile_ring(load_ring(source, settings.char))
    extension = trivial_extension(algebra)
    gorenstein = is_gorenstein(extension)
    presentation = presentation_of(extension)
    report = TrivextReport(
        ring=ring_echo(algebra),
        extension=ring_echo(extension),
        hilbert=hilbert(extension),
        type=ring_type(extension),
        gorenstein=gorenstein,
        compressed=gorenstein and is_compressed(extension),
        complete_intersection=is_complete_intersection(extension),
        presentation=list(presentation.ideal),
    )
    lines = [
        f"trivial extension of {report.ring.label}: dim {extension.dim}",
        f"hilbert: {tuple_text(report.hilbert)}",
        f"type: {report.type}",
        f"gorenstein: {yes_no(report.gorenstein)}",
        f"compressed: {yes_no(report.compressed)}",
        f"complete intersection: {yes_no(report.complete_intersection)}",
        f"presentation in {', '.join(presentation.names)}: {', '.join(report.presentation)}",
    ]
    return document_of(report), '\n'.join(lines)


@click.command('trivext')
@click.argument('rings', nargs=-1, required=True)
@click.pass_context
@handle_errors
def trivext_command(ctx, rings):
    """Trivial extension of R by its dual module."""
    run_inputs(ctx, _trivext_worker, rings)


def _ezd_worker(source, settings, mode=EZD_DEFAULT_MODE, budget=EZD_DEFAULT_BUDGET):
    algebra = compile_ring(load_ring(source, settings.char))
    result = ezd_search(algebra, mode, budget, settings.seed)
    report = EzdReportModel(ring=ring_echo(algebra), ezd=ezd_summary(result))
    text = f"{report.ring.label}: {result.status} ({result.mode}, {result.scope}, {result.consumed} candidates)"
    if result.found:
        text += f"\na = {result.witness_text}\n(0:a) = ({result.generator_text})"
        text += f"\n(0:(0:a)) = (a): {yes_no(result.complementary)}"
    return document_of(report), text


@click.command('ezd')
@click.argument('rings', nargs=-1, required=True)
@click.option('--mode', type=click.Choice(EZD_MODES), default=EZD_DEFAULT_MODE, show_default=True)
@click.option('--budget', type=click.IntRange(min=1), default=EZD_DEFAULT_BUDGET, show_default=True)
@click.pass_context
@handle_errors
def ezd_command(ctx, rings, mode, budget):
    """Search the maximal ideal for an exact zero divisor."""
    run_inputs(ctx, _ezd_worker, rings, mode=mode, budget=budget)


def ring_file_text(pr):
    """A presented ring written in ring-file syntax."""
    ideal = ', '.join(f'"{g}"' for g in pr.ideal)
    lines = [f"# {pr.label}" if pr.label else '# ring',
             f"char = {pr.field.p}",
             f"vars = [{', '.join(pr.names)}]",
             f"ideal = [{ideal}]"]
    if pr.cap is not None:
        lines.append(f"cap = {pr.cap}")
    return '\n'.join(lines)


@click.command('builtin')
@click.argument('name', required=False)
@click.option('--list', 'list_names', is_flag=True, help='List the builtin names.')
@click.pass_context
@handle_errors
def builtin_command(ctx, name, list_names):
    """Print a builtin example ring in ring-file syntax."""
    if list_names or name is None:
        click.echo('\n'.join(builtin_names()))
        return
    settings = settings_of(ctx)
    pr = builtin(name, settings.char if settings.char is not None else DEFAULT_CHARACTERISTIC)
    report = BuiltinReport(name=name, ring=ring_echo(compile_ring(pr)))
    emit(ctx, report, ring_file_text(pr))


commands = [analyze_command, quotient_command, betti_command, trivext_command, ezd_command, builtin_command]
