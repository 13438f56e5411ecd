import pytest

from bcmotzkin.combinatorics import CatalanTable, MotzkinTable
from bcmotzkin.eo import EOStore
from bcmotzkin.laplace import FreeEnergyStore


@pytest.fixture(scope="session")
def fstore():
    return FreeEnergyStore()


@pytest.fixture(scope="session")
def estore():
    return EOStore()


@pytest.fixture(scope="session")
def ctable():
    return CatalanTable()


@pytest.fixture(scope="session")
def mtable():
    return MotzkinTable()
