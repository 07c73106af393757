import pytest

from nilclean import cli


@pytest.fixture(scope="session")
def catalog_rings():
    """All rings from the shipped catalog, constructed once."""
    text = cli.default_catalog_text()
    return cli.load_catalog_rings(text, cli.CliConfig())


@pytest.fixture(scope="session")
def small_catalog(catalog_rings):
    """Catalog rings small enough for per-test exhaustive loops."""
    return [r for r in catalog_rings if r.size <= 64]
