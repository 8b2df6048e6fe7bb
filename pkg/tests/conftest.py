import pytest

from torsion_fano.catalog import Catalog


@pytest.fixture(scope="session")
def catalog():
    return Catalog.load()


@pytest.fixture(scope="session")
def table(catalog):
    return catalog.table
