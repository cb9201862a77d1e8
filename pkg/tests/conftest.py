import pytest

from qhuff.verify import SeriesCache


@pytest.fixture(scope="session")
def cache():
    """Shared family expansions so heavyweight orders are paid for once."""
    return SeriesCache()
