import numpy as np
import pytest

from evoseries.engine import MatrixPolyCoefficients, Orientation

# 3x3 linear-in-t family used as the worked example throughout the suite.
A0 = np.array([[1.0, -1.0, 2.0], [1.0, -2.0, 1.0], [2.0, 1.0, 1.0]])
A1 = np.array([[2.0, 1.0, 3.0], [-2.0, 1.0, 2.0], [-3.0, 2.0, 1.0]])


@pytest.fixture
def example_pair():
    return A0.copy(), A1.copy()


@pytest.fixture
def example_left():
    return MatrixPolyCoefficients((A0, A1), Orientation.LEFT)


@pytest.fixture
def example_right():
    return MatrixPolyCoefficients((A0, A1), Orientation.RIGHT)
