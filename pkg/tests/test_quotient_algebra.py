from fractions import Fraction

import pytest

from rescaling.exceptions import DegreeMismatch
from rescaling.models.quotient_algebra import QuotientAlgebra
from rescaling.models.tensor import GeneratorSet


def commutator(i, j):
    return {(i, j): Fraction(1), (j, i): Fraction(-1)}


def test_free_algebra():
    algebra = QuotientAlgebra(GeneratorSet.uniform(2), [], 5)
    assert list(algebra.hilbert().coefficients) == [1, 2, 4, 8, 16, 32]
    assert sorted(algebra.normal_words(3)) == [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]


def test_polynomial_ring():
    algebra = QuotientAlgebra(GeneratorSet.uniform(2), [commutator(0, 1)], 6)
    assert algebra.dims() == {d: d + 1 for d in range(7)}
    xy = algebra.times_word(0, {0: Fraction(1)}, (0, 1))
    yx = algebra.times_word(0, {0: Fraction(1)}, (1, 0))
    assert xy == yx


def test_exterior_algebra():
    relations = [{(i, i): Fraction(1)} for i in range(3)]
    relations += [{(i, j): Fraction(1), (j, i): Fraction(1)} for i in range(3) for j in range(i + 1, 3)]
    algebra = QuotientAlgebra(GeneratorSet.uniform(3), relations, 5)
    assert list(algebra.hilbert().coefficients) == [1, 3, 3, 1, 0, 0]
    assert len(algebra.normal_words(2)) == 3
    assert algebra.times_word(0, {0: Fraction(1)}, (2, 2)) == {}


def test_mixed_degrees():
    gens = GeneratorSet(("a", "b"), (1, 2), signed=False)
    algebra = QuotientAlgebra(gens, [commutator(0, 1)], 6)
    assert list(algebra.hilbert().coefficients) == [1, 1, 2, 2, 3, 3, 4]


def test_budget_stops_the_build():
    algebra = QuotientAlgebra(GeneratorSet.uniform(2), [], 8, budget=20)
    assert algebra.computed_degree == 4
    assert algebra.hilbert().order == 4
    assert algebra.dims()[4] == 16


def test_relations_must_be_homogeneous():
    with pytest.raises(DegreeMismatch):
        QuotientAlgebra(GeneratorSet.uniform(2), [{(0, 1): Fraction(1), (0,): Fraction(1)}], 3)
    with pytest.raises(DegreeMismatch):
        QuotientAlgebra(GeneratorSet.uniform(2), [{(): Fraction(1)}], 3)
