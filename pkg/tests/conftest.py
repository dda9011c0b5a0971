from pathlib import Path

import numpy as np
import pytest

from src.services.algebra import compile_ring
from src.services.constructions import builtin
from src.services.scalars import PrimeField

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'


@pytest.fixture(scope='session')
def data_dir():
    return DATA_DIR


@pytest.fixture(scope='session')
def compiled():
    """Compiled builtin rings, cached for the whole session: compiled(name, p=101)."""
    cache = {}

    def get(name, p=101):
        key = (name, p)
        if key not in cache:
            cache[key] = compile_ring(builtin(name, p))
        return cache[key]

    return get


@pytest.fixture
def gf101():
    return PrimeField(101)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
