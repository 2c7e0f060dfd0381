"""
Fixtures compartilhadas dos testes
"""
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from modules.frames import Grid  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_grid():
    """Grade 9x9 em [-0.15, 0.15]² com ponto base na origem"""
    return Grid.create((9, 9), ((-0.15, 0.15), (-0.15, 0.15)))


@pytest.fixture
def unit_grid():
    return Grid.create((33, 33), ((-0.5, 0.5), (-0.5, 0.5)))


def random_matrix(rng, n, scale=1.0):
    return scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
