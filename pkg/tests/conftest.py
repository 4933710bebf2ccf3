import pytest

from stringcount.algebra import load_algebra
from stringcount.strings import SparseArray


@pytest.fixture
def S():
    return SparseArray.parse


@pytest.fixture
def A1():
    return load_algebra("A1^1")
