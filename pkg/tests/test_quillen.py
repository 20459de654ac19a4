import pytest

from rescaling.models.algebra import AlgebraPresentation
from rescaling.models.verdict import VerdictStatus
from rescaling.services.algebra_service import algebra_service
from rescaling.services.quillen_service import quillen_service
from rescaling.services.tensor_lie_service import tensor_lie_service


def model_of(algebra, k, truncation):
    return quillen_service.build_quillen_model(algebra_service.rescale_algebra(algebra, k), truncation)


def test_wedge_model_has_zero_differential(wedge2):
    model = model_of(wedge2, 1, 10)
    assert model.generators.degrees == (2, 2)
    assert model.differential == {}
    homology = quillen_service.quillen_homology(model)
    assert homology.dims.as_list() == [0, 2, 0, 1, 0, 2, 0, 3, 0, 6]


def test_torus_homology_is_rescaled_holonomy(torus2):
    model = model_of(torus2, 1, 10)
    assert sorted(model.generators.degrees) == [2, 2, 5]
    assert model.differential
    homology = quillen_service.quillen_homology(model)
    assert homology.dims.as_list() == [0, 2, 0, 0, 0, 0, 0, 0, 0, 0]


def test_differential_squares_to_zero(surface2):
    model = model_of(surface2, 1, 6)
    model.check_square_zero()
    for g in model.differential:
        assert not model.apply(model.differential[g])


def test_bigraded_homology_sums_to_dims(torus2):
    homology = quillen_service.quillen_homology(model_of(torus2, 1, 8))
    totals = {}
    for (degree, _), value in homology.bigraded.items():
        totals[degree] = totals.get(degree, 0) + value
    assert all(totals.get(d, 0) == homology.dims.get(d) for d in range(1, 9))


def test_quillen_test_on_torus(torus2):
    verdict = quillen_service.koszul_quillen_test(torus2, 1, 8)
    assert verdict.status == VerdictStatus.PASS_UP_TO_N
    assert verdict.checked_degree == 8


def test_quillen_test_detects_generic_arrangement(generic32):
    verdict = quillen_service.koszul_quillen_test(generic32, 1, 8)
    assert verdict.status == VerdictStatus.FAIL
    assert verdict.failing_degree == 7
    assert verdict.details["quillen_homology"]["dims"][6] == 1


def test_ce_test_on_torus(torus2):
    verdict = quillen_service.koszul_ce_test(torus2)
    assert verdict.status == VerdictStatus.PASS_UP_TO_N
    entries = {(row["p"], row["w"]): row["dim"] for row in verdict.details["homology"]}
    assert entries == {(0, 0): 1, (1, 1): 2, (2, 2): 1}


def test_ce_test_detects_generic_arrangement(generic32):
    verdict = quillen_service.koszul_ce_test(generic32)
    assert verdict.status == VerdictStatus.FAIL
    assert verdict.failing_degree == 3


def test_ce_boundary_squares_to_zero(wedge2):
    complex_ = quillen_service.ce_complex(wedge2, 3, 4)
    assert complex_.square_zero_holds(3, 4)
    assert complex_.square_zero_holds(2, 3)


@pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_wedge_homology_is_free_lie(n, k):
    truncation = 8 * k
    model = model_of(AlgebraPresentation.wedge_of_circles(n), k, truncation)
    homology = quillen_service.quillen_homology(model)
    assert homology.dims == tensor_lie_service.witt_dims(n, truncation, degree=2 * k)


@pytest.mark.parametrize("family", ["torus2", "wedge2", "surface2", "generic32"])
def test_koszul_tests_agree(family, request):
    algebra = request.getfixturevalue(family)
    verdicts = [
        algebra_service.koszul_series_test(algebra, 8),
        quillen_service.koszul_quillen_test(algebra, 1, 8),
        quillen_service.koszul_ce_test(algebra),
    ]
    assert len({v.passed for v in verdicts}) == 1
    assert verdicts[0].passed == (family != "generic32")


@pytest.mark.parametrize("family", ["torus2", "wedge2", "surface2", "generic32"])
def test_quillen_test_does_not_depend_on_k(family, request):
    algebra = request.getfixturevalue(family)
    verdicts = [quillen_service.koszul_quillen_test(algebra, k, 6 * k + 2) for k in (1, 2, 3)]
    assert len({v.status for v in verdicts}) == 1
    if family == "generic32":
        assert [v.failing_degree for v in verdicts] == [7, 13, 19]
