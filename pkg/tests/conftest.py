from fractions import Fraction
from itertools import product

import pytest

from sdsets.configurations import EXACT, PointConfiguration


def half_24cell() -> PointConfiguration:
    """One vertex from each antipodal pair of the 24-cell: 12 rational points
    in R^4 with inner products {-1/2, 0, 1/2}."""
    h = Fraction(1, 2)
    pts = [tuple(Fraction(int(i == k)) for i in range(4)) for k in range(4)]
    pts += [(h,) + signs for signs in product((h, -h), repeat=3)]
    return PointConfiguration(4, EXACT, tuple(pts))


@pytest.fixture
def cell24():
    return half_24cell()
