import pytest

from lagmul.critical import ConstrainedSystem


@pytest.fixture
def circle():
    return ConstrainedSystem.from_text(0, ["x1", "x2"], "x1", ["x1^2 + x2^2 - 1"])


@pytest.fixture
def parabola():
    return ConstrainedSystem.from_text(0, ["x1", "x2"], "x2", ["x2 - x1^2"])


@pytest.fixture
def fermat():
    return ConstrainedSystem.from_text(0, ["x1", "x2", "x3"], "x1 + 2*x2", ["x1^3 + x2^3 + x3^3 - 1"])
