"""
Shared fixtures for the test suite
"""
import random
from fractions import Fraction

import pytest

from rescaling.config import settings
from rescaling.models.algebra import AlgebraPresentation
from rescaling.models.group import malcev_generators
from rescaling.models.tensor import LieElement


@pytest.fixture
def rng():
    return random.Random(settings.DEFAULT_RANDOM_SEED)


@pytest.fixture
def torus2():
    return AlgebraPresentation.torus(2)


@pytest.fixture
def wedge2():
    return AlgebraPresentation.wedge_of_circles(2)


@pytest.fixture
def surface2():
    return AlgebraPresentation.surface(2)


@pytest.fixture
def generic32():
    return AlgebraPresentation.generic(3, 2)


@pytest.fixture
def random_lie():
    """Random small Lie elements a x1 + b x2 + c [x1, x2] over two generators"""

    def build(rng: random.Random, r: int) -> LieElement:
        gens = malcev_generators(2)
        x = LieElement.generator(gens, 0, r)
        y = LieElement.generator(gens, 1, r)
        a, b, c = (Fraction(rng.randint(-2, 2)) for _ in range(3))
        return x.scale(a) + y.scale(b) + x.bracket(y).scale(c)

    return build
