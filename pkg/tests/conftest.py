import os
import sys

import pytest
from hypothesis import settings

from macaulayfy.ideals import RingPresentation

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

TWO_PLANES = ["x*u", "x*v", "y*u", "y*v"]


def two_planes(extra: str = "") -> RingPresentation:
    return RingPresentation.from_strings("x y u v " + extra, TWO_PLANES)


@pytest.fixture
def planes():
    return two_planes()


@pytest.fixture
def cylinder():
    return two_planes("w")


@pytest.fixture
def double_cylinder():
    return two_planes("w r")


@pytest.fixture
def semigroup():
    return RingPresentation.from_strings("a b c d", ["a*d - b*c", "a*c^2 - b^2*d", "b^3 - a^2*c", "c^3 - b*d^2"])
