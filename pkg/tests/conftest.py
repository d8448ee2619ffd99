import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dgres.fixtures import all_fixtures, e1, e2, e3
from dgres.scalars import Field


@pytest.fixture(scope="session")
def E1():
    return e1()


@pytest.fixture(scope="session")
def E2():
    return e2()


@pytest.fixture(scope="session")
def E3():
    return e3()


@pytest.fixture(scope="session")
def E3p():
    return e3(Field.prime(101))


@pytest.fixture(scope="session")
def fixture_algebras():
    return all_fixtures()


GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR
