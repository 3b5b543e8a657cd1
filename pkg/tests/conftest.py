import pytest

from minkarr import scalars


@pytest.fixture(autouse=True)
def _reset_tolerance():
    yield
    scalars.set_tolerance(scalars.DEFAULT_TOLERANCE)
