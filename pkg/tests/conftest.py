from fractions import Fraction

import pytest

from genwass import EntropyParams, dirac, measure, validate_metric


@pytest.fixture
def two_point():
    """Two points at distance 1."""
    return validate_metric(["x", "y"], [[0, 1], [1, 0]])


@pytest.fixture
def two_point_far():
    """Two points at distance 3: farther than any worthwhile shipment at a=b=1."""
    return validate_metric(["x", "y"], [[0, 3], [3, 0]])


@pytest.fixture
def line3():
    """Three collinear points at coordinates -1, 0, 1."""
    return validate_metric(["-1", "0", "1"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@pytest.fixture
def unit_params():
    return EntropyParams(a=Fraction(1), b=Fraction(1), p=1)


def delta(space, i, mass=1):
    return dirac(space, i, Fraction(mass))


def weights(space, *w):
    return measure(space, list(w))
