import pytest

from envelkit.catalog import enumerate_ids
from envelkit.scalars import QQ

# a small grid keeps the heavier property suites fast while touching every family
SMALL_GRID = (-1, 0, 2)


def small_catalog():
    return enumerate_ids(QQ, SMALL_GRID)


@pytest.fixture(scope="session")
def catalog_ids():
    return small_catalog()
