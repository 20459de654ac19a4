from fractions import Fraction

import pytest

from rescaling.exceptions import InvalidParameter, QuadraticRequired
from rescaling.models.algebra import AlgebraPresentation, AlgebraStructure, wedge
from rescaling.models.verdict import VerdictStatus
from rescaling.services.algebra_service import algebra_service
from rescaling.services.geometry_service import geometry_service


def coefficients(series):
    return [int(c) for c in series.coefficients]


def test_exterior_sign_rule():
    assert wedge({(1,): 1}, {(0,): 1}) == {(0, 1): Fraction(-1)}
    assert wedge({(0,): 1}, {(0,): 1}) == {}


def test_family_hilbert_series(torus2, wedge2, surface2, generic32):
    assert coefficients(algebra_service.hilbert(AlgebraPresentation.torus(3), 4)) == [1, 3, 3, 1, 0]
    assert coefficients(algebra_service.hilbert(torus2, 3)) == [1, 2, 1, 0]
    assert coefficients(algebra_service.hilbert(wedge2, 3)) == [1, 2, 0, 0]
    assert coefficients(algebra_service.hilbert(surface2, 3)) == [1, 4, 1, 0]
    assert coefficients(algebra_service.hilbert(generic32, 4)) == [1, 3, 3, 0, 0]


def test_from_monomials_sorts_with_sign():
    algebra = AlgebraPresentation.from_monomials(2, [[([2, 1], 1)]])
    assert algebra.relations == [{(0, 1): Fraction(-1)}]
    assert coefficients(algebra_service.hilbert(algebra, 2)) == [1, 2, 0]


def test_bad_relations_rejected():
    with pytest.raises(InvalidParameter):
        AlgebraPresentation(2, [{(0,): 1}])
    with pytest.raises(InvalidParameter):
        AlgebraPresentation(3, [{(0, 1): 1, (0, 1, 2): 1}])
    with pytest.raises(InvalidParameter):
        AlgebraPresentation(2, [{(1, 0): 1}])
    with pytest.raises(InvalidParameter):
        AlgebraPresentation.generic(2, 2)


def test_quadratic_detection(surface2, generic32):
    assert surface2.is_quadratic()
    assert not generic32.is_quadratic()
    assert generic32.relation_degrees() == [3]


def test_normal_basis_multiplication(surface2):
    structure = AlgebraStructure.of(surface2)
    assert structure.dim(1) == 4
    assert structure.dim(2) == 1
    assert structure.top_degree() == 2
    first = structure.multiply(1, 0, 1, 1)
    second = structure.multiply(1, 2, 1, 3)
    assert first and first == second


def test_rescaled_hilbert(torus2):
    rescaled = algebra_service.rescale_algebra(torus2, 1)
    assert rescaled.scale == 3
    series = algebra_service.rescaled_hilbert(rescaled, 7)
    assert coefficients(series) == [1, 0, 0, 2, 0, 0, 1, 0]
    with pytest.raises(InvalidParameter):
        algebra_service.rescale_algebra(torus2, 0)


def test_quadratic_duals(torus2, wedge2, surface2):
    torus_dual = algebra_service.quadratic_dual(torus2)
    assert coefficients(torus_dual.hilbert(4)) == [1, 2, 3, 4, 5]
    assert torus_dual.pbw
    assert coefficients(algebra_service.quadratic_dual(wedge2).hilbert(4)) == [1, 2, 4, 8, 16]
    assert coefficients(algebra_service.quadratic_dual(surface2).hilbert(4)) == [1, 4, 15, 56, 209]


@pytest.mark.parametrize(
    "algebra",
    [
        AlgebraPresentation.surface(1),
        AlgebraPresentation.surface(2),
        AlgebraPresentation.surface(3),
        AlgebraPresentation.torus(2),
        AlgebraPresentation.exterior(4),
        AlgebraPresentation.wedge_of_circles(3),
        AlgebraPresentation.from_monomials(3, [[([1, 2], Fraction(1)), ([1, 3], Fraction(-1))], [([2, 3], Fraction(2))]], name="mixed-n3"),
        geometry_service.link_cohomology(geometry_service.hopf_link(3)).presentation,
    ],
    ids=lambda a: a.name,
)
def test_double_dual(algebra):
    assert algebra_service.quadratic_dual(algebra).double_dual_holds()


def test_dual_needs_quadratic(generic32):
    with pytest.raises(QuadraticRequired):
        algebra_service.quadratic_dual(generic32)


def test_series_test_on_koszul_algebras(torus2, surface2):
    verdict = algebra_service.koszul_series_test(torus2, 6)
    assert verdict.status == VerdictStatus.PASS_UP_TO_N
    assert verdict.checked_degree == 6
    assert verdict.details["pbw"] is True
    assert algebra_service.koszul_series_test(surface2, 4).passed


def test_series_test_rejects_non_quadratic(generic32):
    verdict = algebra_service.koszul_series_test(generic32, 8)
    assert verdict.status == VerdictStatus.FAIL
    assert verdict.failing_degree == 3
    assert verdict.note == "not quadratic"
    with pytest.raises(QuadraticRequired):
        algebra_service.koszul_series_test(generic32, 8, strict=True)


def test_holonomy_dims(torus2, wedge2, surface2):
    assert algebra_service.holonomy_lie(torus2, 4).dims.as_list() == [2, 0, 0, 0]
    assert algebra_service.holonomy_lie(wedge2, 5).dims.as_list() == [2, 1, 2, 3, 6]
    assert algebra_service.holonomy_lie(surface2, 3).dims.as_list() == [4, 5, 16]


def test_holonomy_relations_are_commutators(torus2):
    relations = algebra_service.holonomy_relations(torus2, 3)
    assert len(relations) == 1
    assert relations[0].coefficient((0, 1)) == -relations[0].coefficient((1, 0)) != 0


def test_holonomy_truncation_checked(torus2):
    with pytest.raises(InvalidParameter):
        algebra_service.holonomy_lie(torus2, 0)
