"""
Readers for ring files and skew-matrix files.

Both formats are line oriented ``key = value`` assignments; ``#`` starts a
comment and a bracketed list may continue over several lines::

    char = 101
    vars = [x, y, z]
    ideal = ["x^2", "y^2", "z^2"]
    cap = 5
"""
import re
from pathlib import Path

from pydantic import ValidationError

from src.models.inputs import RingFileModel, SkewFileModel
from src.services.algebra import PresentedRing
from src.services.constructions import SkewMatrix
from src.services.parser import parse_poly
from src.services.scalars import PrimeField
from src.utils.config import DEFAULT_CHARACTERISTIC
from src.utils.errors import InputError, RingFileError

RING_KEYS = ('char', 'vars', 'ideal', 'cap')
SKEW_KEYS = ('size', 'row', 'vars', 'char')

_ASSIGNMENT = re.compile(r'^\s*([A-Za-z_]+)\s*=\s*(.*)$')
_QUOTED = re.compile(r'"([^"]*)"')
_IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


def _strip_comment(line):
    in_string = False
    for index, char in enumerate(line):
        if char == '"':
            in_string = not in_string
        elif char == '#' and not in_string:
            return line[:index]
    return line


def _assignments(text, path, keys):
    """Yield (key, raw value, line number), joining bracketed values over lines."""
    pending = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if pending is not None:
            key, value, start = pending
            value = f"{value} {line}"
            if value.count('[') <= value.count(']'):
                pending = None
                yield key, value, start
            else:
                pending = (key, value, start)
            continue
        if not line:
            continue
        match = _ASSIGNMENT.match(line)
        if not match:
            raise RingFileError(f"expected 'key = value', found {line!r}", path, number)
        key, value = match.group(1), match.group(2).strip()
        if key not in keys:
            raise RingFileError(f"unknown key {key!r}; expected one of {', '.join(keys)}", path, number)
        if value.count('[') > value.count(']'):
            pending = (key, value, number)
        else:
            yield key, value, number
    if pending is not None:
        raise RingFileError(f"unterminated list for {pending[0]!r}", path, pending[2])


def _integer(value, key, path, line):
    try:
        return int(value)
    except ValueError:
        raise RingFileError(f"{key} must be an integer, found {value!r}", path, line) from None


def _list(value, key, path, line, quoted):
    if not (value.startswith('[') and value.endswith(']')):
        raise RingFileError(f"{key} must be a bracketed list", path, line)
    body = value[1:-1].strip()
    if quoted:
        items = _QUOTED.findall(body)
        leftover = _QUOTED.sub('', body).replace(',', '').strip()
        if leftover:
            raise RingFileError(f"{key} entries must be double-quoted strings", path, line)
        return items
    return [item.strip().strip('"') for item in body.split(',') if item.strip()]


def _validation_error(exc, lines, path):
    first = exc.errors()[0]
    field = first['loc'][0] if first['loc'] else None
    message = first['msg'].removeprefix('Value error, ')
    return RingFileError(f"{field}: {message}" if field else message, path, lines.get(field))


def parse_ring_text(text, path='<string>', char=None, label=None):
    """
    Parse ring-file text into a presented ring.

    :param text: File contents
    :param path: Name used in error messages
    :param char: Characteristic overriding the file's ``char`` line
    :param label: Report label, defaults to the file stem
    :rtype: PresentedRing
    :raises RingFileError: With the offending line on malformed input
    """
    values, lines = {}, {}
    for key, value, number in _assignments(text, path, RING_KEYS):
        if key in values:
            raise RingFileError(f"duplicate key {key!r}", path, number)
        lines[key] = number
        if key in ('char', 'cap'):
            values[key] = _integer(value, key, path, number)
        else:
            values[key] = _list(value, key, path, number, quoted=(key == 'ideal'))
    if char is not None:
        values['char'] = char
    for key in ('char', 'vars', 'ideal'):
        if key not in values:
            raise RingFileError(f"missing required key {key!r}", path)
    try:
        model = RingFileModel(**values)
    except ValidationError as exc:
        raise _validation_error(exc, lines, path) from None
    label = label if label is not None else Path(path).stem
    ring = PresentedRing(PrimeField(model.char), tuple(model.vars), tuple(model.ideal), model.cap, label)
    for index, entry in enumerate(model.ideal):
        try:
            parse_poly(entry, list(model.vars), ring.field, model.cap or 2)
        except InputError as exc:
            raise RingFileError(f"ideal entry {index + 1}: {exc}", path, lines.get('ideal')) from None
    return ring


def load_ring_file(path, char=None):
    """
    Read a ring file from disk.

    :raises RingFileError: If the file cannot be read or is malformed
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise RingFileError(f"cannot read file: {exc.strerror}", str(path)) from None
    return parse_ring_text(text, str(path), char)


def parse_skew_text(text, path='<string>', char=None):
    """
    Parse skew-matrix text.

    Without a ``vars`` line the variables are the identifiers of the entries in
    sorted order.

    :rtype: SkewMatrix
    :raises RingFileError: On malformed input or a matrix that is not skew-symmetric
    """
    values, lines, rows = {}, {}, []
    for key, value, number in _assignments(text, path, SKEW_KEYS):
        if key == 'row':
            rows.append(_list(value, key, path, number, quoted=True))
            lines.setdefault('rows', number)
            continue
        if key in values:
            raise RingFileError(f"duplicate key {key!r}", path, number)
        lines[key] = number
        if key in ('size', 'char'):
            values[key] = _integer(value, key, path, number)
        else:
            values[key] = _list(value, key, path, number, quoted=False)
    if 'size' not in values:
        raise RingFileError("missing required key 'size'", path)
    values['rows'] = rows
    if char is not None:
        values['char'] = char
    try:
        model = SkewFileModel(**values)
    except ValidationError as exc:
        raise _validation_error(exc, lines, path) from None
    names = model.vars
    if names is None:
        names = sorted({name for row in model.rows for entry in row for name in _IDENTIFIER.findall(entry)})
    p = model.char if model.char is not None else DEFAULT_CHARACTERISTIC
    try:
        return SkewMatrix.from_strings(PrimeField(p), names, model.rows)
    except InputError as exc:
        raise RingFileError(str(exc), path, lines.get('rows')) from None


def load_skew_file(path, char=None):
    """
    Read a skew-matrix file from disk.

    :raises RingFileError: If the file cannot be read or is malformed
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise RingFileError(f"cannot read file: {exc.strerror}", str(path)) from None
    return parse_skew_text(text, str(path), char)
