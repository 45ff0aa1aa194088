import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def _restore_precision():
    # tests set mp.dps freely; never leak it into the next test
    saved = mp.dps
    yield
    mp.dps = saved
