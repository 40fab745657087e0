import pytest

from mforge.composition import octonions_q, quaternions_q


@pytest.fixture(scope="session")
def octonions():
    return octonions_q()


@pytest.fixture(scope="session")
def quaternions():
    return quaternions_q()
