import re

from sympy import isprime

from src.utils.config import MAX_CHARACTERISTIC, MAX_DEPTH

_IDENTIFIER = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def validate_prime(p):
    """
    Validate that p can serve as the characteristic of the coefficient field.
    """
    if isinstance(p, bool) or not isinstance(p, int):
        return False

    if p < 2 or p >= MAX_CHARACTERISTIC:
        return False

    return bool(isprime(p))


def validate_variable_names(names):
    """
    Validate a list of variable names: identifiers, pairwise distinct.
    """
    if not names:
        return True

    for name in names:
        if not isinstance(name, str) or not _IDENTIFIER.match(name):
            return False

    return len(set(names)) == len(names)


def validate_depth(depth, allow_deep=False):
    """
    Validate a resolution/series depth.
    """
    if isinstance(depth, bool) or not isinstance(depth, int):
        return False

    if depth < 0:
        return False

    return allow_deep or depth <= MAX_DEPTH


def validate_cap(cap):
    """
    Validate a degree cap: a positive integer.
    """
    if isinstance(cap, bool) or not isinstance(cap, int):
        return False

    return cap > 0
