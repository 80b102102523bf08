import pytest

from zetalab.zeros import default_table


@pytest.fixture(scope="session")
def table():
    """The default 10^4-zero table (built once, then read from the cache)."""
    return default_table()


@pytest.fixture(scope="session")
def table100():
    return default_table(100)
