import random

import pytest

from invmon import builtins
from invmon.backend import enumerate_monoid


@pytest.fixture(scope="session")
def semilattice():
    P = builtins.semilattice()
    return P, enumerate_monoid(P)


@pytest.fixture(scope="session")
def i2():
    return builtins.i2()


@pytest.fixture(scope="session")
def semilattice0():
    P = builtins.semilattice0()
    return P, enumerate_monoid(P)


@pytest.fixture
def rng():
    return random.Random(1234)
