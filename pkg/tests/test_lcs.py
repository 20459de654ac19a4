from fractions import Fraction

import pytest

from rescaling.config import settings
from rescaling.exceptions import InvalidParameter, NegativeRank, NonIntegralRank, OddDegreeUnsupported
from rescaling.models.algebra import AlgebraPresentation
from rescaling.models.power_series import PowerSeries, lcs_product
from rescaling.models.tensor import GradedLieDims
from rescaling.services.algebra_service import algebra_service
from rescaling.services.lcs_service import lcs_service
from rescaling.services.tensor_lie_service import tensor_lie_service


def test_free_group_ranks():
    ranks = lcs_service.extract_ranks(PowerSeries.of([1, 2], 6))
    assert ranks.as_list() == [2, 1, 2, 3, 6, 9]
    assert ranks.product() == PowerSeries.of([1, -2], 6)


def test_surface_group_ranks():
    ranks = lcs_service.extract_ranks(PowerSeries.of([1, 4, 1], 6))
    assert ranks.as_list()[:3] == [4, 5, 16]


def test_extraction_matches_mobius_oracle():
    series = PowerSeries.of([1, 4, 1], 8)
    ranks = lcs_service.extract_ranks(series)
    oracle = lcs_service.extract_ranks_mobius(series)
    assert all(oracle[n] == ranks.get(n) for n in range(1, 9))


def test_extraction_errors():
    with pytest.raises(NegativeRank):
        lcs_service.extract_ranks(PowerSeries.of([1, 3, 3], 6))
    with pytest.raises(NonIntegralRank):
        lcs_service.extract_ranks(PowerSeries.of([1, Fraction(1, 2)], 4))
    with pytest.raises(InvalidParameter):
        lcs_service.extract_ranks(PowerSeries.of([2, 1], 4))


def test_mobius_oracle_reports_fractions():
    oracle = lcs_service.extract_ranks_mobius(PowerSeries.of([1, Fraction(1, 2)], 2))
    assert oracle[1] == Fraction(1, 2)


def test_homotopy_ranks_of_rescaled_wedge():
    series = PowerSeries.of([1, 2], 12)
    ranks = lcs_service.homotopy_ranks(series, 1, 12)
    assert ranks.ranks == {2: 2, 4: 1, 6: 2, 8: 3, 10: 6, 12: 9}
    product = lcs_service.homotopy_product(ranks, 1, 12)
    assert product == series.substitute(-1, 3, 12)


def test_homotopy_ranks_for_larger_k():
    ranks = lcs_service.homotopy_ranks(PowerSeries.of([1, 2, 1], 12), 2, 12)
    assert ranks.ranks == {4: 2}
    assert lcs_service.homotopy_product(ranks, 2, 12) == PowerSeries.of([1, 2, 1], 12).substitute(-1, 5, 12)


def test_loop_poincare():
    loop = lcs_service.loop_poincare(PowerSeries.of([1, 2], 10), 1, 10)
    assert list(loop.coefficients) == [1, 0, 2, 0, 4, 0, 8, 0, 16, 0, 32]
    with pytest.raises(InvalidParameter):
        lcs_service.loop_poincare(PowerSeries.of([1, 2], 10), 0, 10)


def test_pbw_series():
    series = lcs_service.pbw_series(GradedLieDims({2: 2}, 2), 6)
    assert list(series.coefficients) == [1, 0, 2, 0, 3, 0, 4]
    with pytest.raises(OddDegreeUnsupported):
        lcs_service.pbw_series(GradedLieDims({3: 1}, 3), 6)


def test_pbw_matches_loop_series_for_wedge(wedge2):
    holonomy = algebra_service.holonomy_lie(wedge2, 5)
    dims = tensor_lie_service.rescale_lie_dims(holonomy.dims, 1)
    loop = lcs_service.loop_poincare(algebra_service.hilbert(wedge2, 10), 1, 10)
    assert lcs_service.pbw_series(dims, 10) == loop


@pytest.mark.parametrize(
    "algebra",
    [
        AlgebraPresentation.torus(2),
        AlgebraPresentation.torus(3),
        AlgebraPresentation.wedge_of_circles(2),
        AlgebraPresentation.wedge_of_circles(3),
        AlgebraPresentation.surface(1),
        AlgebraPresentation.surface(2),
        AlgebraPresentation.surface(3),
    ],
    ids=lambda a: a.name,
)
def test_pbw_check_covers_degree_fourteen(algebra):
    loop = lcs_service.loop_poincare(algebra_service.hilbert(algebra, 14), 1, 14)
    check = lcs_service.pbw_check(algebra, 1, loop)
    assert check["holonomy_weight"] == 7
    assert check["checked_degree"] == 14
    assert check["complete"] is True
    assert check["matches"] is True


def test_pbw_check_reports_partial_coverage(wedge2, monkeypatch):
    monkeypatch.setattr(settings, "HOLONOMY_MAX_WEIGHT", 3)
    loop = lcs_service.loop_poincare(algebra_service.hilbert(wedge2, 12), 1, 12)
    check = lcs_service.pbw_check(wedge2, 1, loop)
    assert check["checked_degree"] == 7
    assert check["complete"] is False
    assert check["matches"] is True
    assert check["series"].order == 7


def test_even_degree_product_identity():
    for dims in (
        tensor_lie_service.rescale_lie_dims(tensor_lie_service.witt_dims(3, 7), 1),
        tensor_lie_service.witt_dims(2, 14, degree=2),
        tensor_lie_service.witt_dims(2, 16, degree=4),
    ):
        top = dims.truncation
        product = lcs_product(dims.dims.items(), top)
        expected = PowerSeries.one(top) - PowerSeries.monomial(dims.get(min(dims.support())), min(dims.support()), top)
        assert product == expected


@pytest.mark.parametrize("g, weight", [(1, 7), (2, 7), (3, 5)])
def test_surface_product_identities(g, weight):
    surface = AlgebraPresentation.surface(g)
    series = algebra_service.hilbert(surface, 12)
    ranks = lcs_service.homotopy_ranks(series, 1, 12)
    product = lcs_service.homotopy_product(ranks, 1, 12)
    assert product == series.substitute(-1, 3, 12)
    assert product == PowerSeries.of([1, 0, 0, -2 * g, 0, 0, 1], 12)
    holonomy = algebra_service.holonomy_lie(surface, weight)
    assert holonomy.dims.as_list() == lcs_service.extract_ranks(series, weight).as_list()


def test_rebracketing():
    result = lcs_service.rebracket_dims(GradedLieDims.from_list([1, 3, 0, 3, 0, 6]), 3)
    assert result.dims.as_list() == [3, 3, 6]
    assert result.dropped == [1]
    assert lcs_service.rebracket_dims(GradedLieDims.from_list([1, 2]), 2).dims.as_list() == [1, 2]
    with pytest.raises(InvalidParameter):
        lcs_service.rebracket_dims(GradedLieDims.from_list([1]), 1)
