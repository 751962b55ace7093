import os
import tempfile

# keep the pal cache out of the user's home during tests
os.environ.setdefault("MOULDKIT_CACHE", tempfile.mkdtemp(prefix="mouldkit-test-"))

import pytest  # noqa: E402

from mouldkit.ds import solve_ds  # noqa: E402
from mouldkit.pal import PalTable  # noqa: E402
from mouldkit.pipeline import gamma_s  # noqa: E402


@pytest.fixture(scope="session")
def table5():
    return PalTable.load(5)


@pytest.fixture(scope="session")
def table6():
    return PalTable.load(6)


@pytest.fixture(scope="session")
def f3():
    return solve_ds(3)[0]


@pytest.fixture(scope="session")
def f5():
    return solve_ds(5)[0]


@pytest.fixture(scope="session")
def rec3(f3, table5):
    return gamma_s(f3, 5, table5)


@pytest.fixture(scope="session")
def rec5(f5, table5):
    return gamma_s(f5, 5, table5)
