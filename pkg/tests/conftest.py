import pytest

from abba import Matrix


@pytest.fixture
def nilpotent_pair():
    """2x2 pair whose products have different rank sequences."""
    a = Matrix.exact([[0, 1], [0, 0]])
    b = Matrix.exact([[0, 0], [0, 1]])
    return a, b


@pytest.fixture
def hermitian_pair_3x3():
    """Hermitian pair whose products are similar but not unitarily similar."""
    a = Matrix.exact([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    b = Matrix.exact([[0, -1j, 1j], [1j, 0, -1j], [-1j, 1j, 0]])
    return a, b


@pytest.fixture
def transpose_matrix():
    return Matrix.exact([[0, 1, 0], [0, 0, 2], [0, 0, 0]])


@pytest.fixture
def hermitian_normal_pair_4x4():
    """Hermitian a, normal b, products not similar (minimal size and rank)."""
    a = Matrix.exact([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]])
    b = Matrix.exact([[0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]])
    return a, b
