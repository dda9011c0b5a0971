"""
Helpers shared by the command controllers: global settings, ring resolution,
error reporting and ordered execution over several inputs.
"""
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import wraps
from pathlib import Path

import click

from src.models.report import dump_report, validate_report
from src.services.constructions import builtin, builtin_names
from src.services.parser import GRAMMAR
from src.services.ring_files import load_ring_file
from src.utils.config import DEFAULT_CHARACTERISTIC, DEFAULT_DEPTH, DEFAULT_SEED
from src.utils.errors import InputError, ParseError, ToolkitError
from src.utils.logger import configure_logging


@dataclass
class Settings:
    """Values of the global flags for one invocation."""
    char: int = None
    json: bool = False
    depth: int = DEFAULT_DEPTH
    seed: int = DEFAULT_SEED
    jobs: int = 1
    verbose: bool = False
    deep: bool = False


def settings_of(ctx):
    return ctx.find_object(Settings) or Settings()


def load_ring(source, char=None):
    """
    Resolve a ring argument: an existing file path or a builtin name.

    :param source: Path to a ring file or a builtin name
    :type source: str
    :param char: Characteristic overriding the file's own
    :rtype: PresentedRing
    :raises InputError: If the argument is neither
    """
    if Path(source).is_file():
        return load_ring_file(source, char)
    try:
        return builtin(source, char if char is not None else DEFAULT_CHARACTERISTIC)
    except InputError:
        if source.endswith('.ring') or '/' in source:
            return load_ring_file(source, char)
        raise InputError(f"{source!r} is neither a ring file nor a builtin ({', '.join(builtin_names())})")


def error_lines(exc):
    """Lines written to stderr for a toolkit error."""
    lines = [f"error: {exc}"]
    if isinstance(exc, ParseError):
        lines.append(exc.excerpt())
        lines.append(GRAMMAR)
    return lines


def handle_errors(command):
    """Report toolkit errors on stderr and exit with their code."""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ToolkitError as exc:
            for line in error_lines(exc):
                click.echo(line, err=True)
            click.get_current_context().exit(exc.exit_code)
    return wrapper


def _run_one(task):
    worker, source, settings, options = task
    configure_logging('INFO' if settings['verbose'] else None)
    try:
        document, text = worker(source, Settings(**settings), **options)
        return 'ok', document, text
    except ToolkitError as exc:
        return 'error', exc.exit_code, error_lines(exc)


def run_inputs(ctx, worker, sources, **options):
    """
    Run ``worker(source, settings, **options)`` for each input and print the results in input order.

    The worker returns ``(document, text)``; with ``--jobs N`` above 1 the inputs
    are spread over a process pool. Errors of one input do not stop the others;
    the command exits with the largest error code seen.
    """
    settings = settings_of(ctx)
    tasks = [(worker, source, asdict(settings), options) for source in sources]
    if settings.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=settings.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(task) for task in tasks]
    documents, worst = [], 0
    for status, first, second in results:
        if status == 'ok':
            documents.append(first)
            if not settings.json:
                click.echo(second)
        else:
            worst = max(worst, first)
            for line in second:
                click.echo(line, err=True)
    if settings.json and documents:
        payload = documents[0] if len(sources) == 1 else documents
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
    if worst:
        ctx.exit(worst)


def document_of(report):
    return validate_report(report)


def emit(ctx, report, text):
    """Print one report as JSON or as text, following the global flag."""
    if settings_of(ctx).json:
        click.echo(dump_report(report))
    else:
        click.echo(text)


def yes_no(flag):
    return 'true' if flag else 'false'


def tuple_text(values):
    return f"({', '.join(str(v) for v in values)})"


def list_text(values):
    return ', '.join(str(v) for v in values)
