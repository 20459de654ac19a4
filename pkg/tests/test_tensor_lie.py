from fractions import Fraction

import pytest

from rescaling.exceptions import DegreeMismatch, InvalidParameter, NotPrimitive, TruncationOverflow, UnsupportedSignedCase
from rescaling.models.tensor import GeneratorSet, GradedLieDims, LieElement
from rescaling.services.tensor_lie_service import lyndon_words, tensor_lie_service


def test_witt_dimensions():
    assert tensor_lie_service.witt_dims(2, 6).as_list() == [2, 1, 2, 3, 6, 9]
    assert tensor_lie_service.witt_dims(3, 6).as_list() == [3, 3, 8, 18, 48, 116]


def test_witt_in_higher_degree():
    dims = tensor_lie_service.witt_dims(2, 6, degree=2)
    assert dims.as_list() == [0, 2, 0, 1, 0, 2]


def test_lyndon_words_order():
    assert list(lyndon_words(2, 3)) == [(0,), (0, 0, 1), (0, 1), (0, 1, 1), (1,)]


def test_free_lie_dims_agree_with_oracles():
    gens = GeneratorSet.uniform(2)
    witt = tensor_lie_service.witt_dims(2, 6)
    assert tensor_lie_service.free_lie_dims_lyndon(gens, 6) == witt
    assert tensor_lie_service.lie_span_dims(gens, [], 6) == witt
    assert [tensor_lie_service.free_lie_dim(gens, d) for d in range(1, 7)] == witt.as_list()


def test_odd_generator_squares_nontrivially():
    gens = GeneratorSet(("a",), (1,), signed=True)
    assert tensor_lie_service.lie_span_dims(gens, [], 3).as_list() == [1, 1, 0]
    with pytest.raises(UnsupportedSignedCase):
        tensor_lie_service.free_lie_dims_lyndon(gens, 3)


def test_uniform_degree_one_is_unsigned():
    assert not GeneratorSet.uniform(2).signed
    assert GeneratorSet.uniform(2, degree=2).signed


def test_bracket_antisymmetry_and_jacobi(rng, random_lie):
    for _ in range(10):
        a, b, c = (random_lie(rng, 6) for _ in range(3))
        assert a.bracket(b) == -b.bracket(a)
        jacobi = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
        assert jacobi.is_zero()


def test_signed_bracket_of_even_generators_is_antisymmetric():
    gens = GeneratorSet.uniform(2, degree=2)
    x = LieElement.generator(gens, 0, 4)
    y = LieElement.generator(gens, 1, 4)
    assert x.bracket(y) == -y.bracket(x)
    assert x.bracket(x).is_zero()


def test_bracket_past_truncation():
    gens = GeneratorSet.uniform(2)
    x = LieElement.generator(gens, 0, 1)
    y = LieElement.generator(gens, 1, 1)
    with pytest.raises(TruncationOverflow):
        x.bracket(y)
    assert x.bracket(y, truncate=True).is_zero()


def test_products_are_not_lie():
    gens = GeneratorSet.uniform(2)
    x = LieElement.generator(gens, 0, 3)
    y = LieElement.generator(gens, 1, 3)
    assert tensor_lie_service.is_lie(x.bracket(y))
    assert not tensor_lie_service.is_lie(x.product(y))
    with pytest.raises(NotPrimitive):
        tensor_lie_service.ensure_lie(x.product(y))


def test_quotient_by_commutator_is_abelian():
    gens = GeneratorSet.uniform(2)
    x = LieElement.generator(gens, 0, 4)
    y = LieElement.generator(gens, 1, 4)
    dims = tensor_lie_service.lie_span_dims(gens, [x.bracket(y)], 4)
    assert dims.as_list() == [2, 0, 0, 0]


def test_derivation_follows_leibniz_rule():
    gens = GeneratorSet(("a", "b", "c"), (2, 2, 1))
    a = LieElement.generator(gens, 0, 4)
    b = LieElement.generator(gens, 1, 4)
    c = LieElement.generator(gens, 2, 4)
    assert tensor_lie_service.extend_derivation({0: c}, a.bracket(b)) == c.bracket(b)


def test_derivation_image_degree_checked():
    gens = GeneratorSet(("a", "b"), (2, 2))
    b = LieElement.generator(gens, 1, 4)
    with pytest.raises(DegreeMismatch):
        tensor_lie_service.extend_derivation({0: b}, LieElement.generator(gens, 0, 4))


def test_rescale_lie_dims():
    dims = tensor_lie_service.rescale_lie_dims(GradedLieDims.from_list([2, 1]), 1)
    assert dims.dims == {2: 2, 4: 1}
    assert dims.truncation == 4
    with pytest.raises(InvalidParameter):
        tensor_lie_service.rescale_lie_dims(dims, 0)


def test_exact_coefficients():
    gens = GeneratorSet.uniform(2)
    x = LieElement.generator(gens, 0, 2).scale(Fraction(1, 3))
    y = LieElement.generator(gens, 1, 2)
    assert x.bracket(y).coefficient((0, 1)) == Fraction(1, 3)


def random_relation(rng, gens, truncation):
    """Random homogeneous combination of brackets of length two or three"""
    x = [LieElement.generator(gens, g, truncation) for g in range(len(gens))]
    brackets = [a.bracket(b) for a in x for b in x] + [a.bracket(b).bracket(c) for a in x for b in x for c in x]
    degree = rng.choice(sorted({b.degrees()[0] for b in brackets if not b.is_zero()}))
    relation = LieElement.zero(gens, truncation)
    for bracket in brackets:
        if bracket.degrees() == [degree]:
            relation = relation + bracket.scale(Fraction(rng.randint(-2, 2)))
    return relation


def test_quotient_dims_shrink_as_relations_are_added(rng):
    gens = GeneratorSet.uniform(3)
    relations = []
    previous = tensor_lie_service.lie_span_dims(gens, relations, 5).as_list()
    for _ in range(4):
        relations.append(random_relation(rng, gens, 5))
        current = tensor_lie_service.lie_span_dims(gens, relations, 5).as_list()
        assert all(a <= b for a, b in zip(current, previous))
        previous = current


@pytest.mark.parametrize(
    "gens",
    [
        GeneratorSet.uniform(3),
        GeneratorSet(("a", "b", "c"), (1, 1, 2), signed=True),
        GeneratorSet(("a", "b"), (1, 2), signed=False),
    ],
    ids=["uniform", "signed-mixed", "unsigned-mixed"],
)
def test_envelope_dims_match_explicit_quotient(rng, gens):
    for _ in range(3):
        relations = [random_relation(rng, gens, 6) for _ in range(2)]
        relations = [r for r in relations if not r.is_zero()]
        fast = tensor_lie_service.lie_span_dims(gens, relations, 6)
        slow = tensor_lie_service.quotient_lie_algebra(gens, relations, 6).dims
        assert fast.as_list() == slow.as_list()
