import pytest

from rescaling.exceptions import InvalidParameter
from rescaling.models.geometry import ArrangementSpec, WeightedLinkingGraph
from rescaling.models.power_series import PowerSeries
from rescaling.models.verdict import VerdictStatus
from rescaling.services.algebra_service import algebra_service
from rescaling.services.geometry_service import geometry_service


def boolean_checks(checks):
    return {key: value for key, value in checks.items() if isinstance(value, bool)}


# ==================== Linking graphs ====================

def test_linking_matrix_validation():
    graph = WeightedLinkingGraph.from_matrix([[0, 2], [2, 0]])
    assert graph.weight(1, 0) == 2
    assert graph.matrix() == [[0, 2], [2, 0]]
    with pytest.raises(InvalidParameter):
        WeightedLinkingGraph.from_matrix([[0, 1], [2, 0]])
    with pytest.raises(InvalidParameter):
        WeightedLinkingGraph.from_matrix([[1, 0], [0, 0]])


def test_join_multiplies_linking_numbers():
    first = WeightedLinkingGraph.from_matrix([[0, 2, 0], [2, 0, 3], [0, 3, 0]])
    second = WeightedLinkingGraph.from_matrix([[0, 5, 1], [5, 0, -1], [1, -1, 0]])
    joined = geometry_service.join_links(first, second)
    assert joined.matrix() == [[0, 10, 0], [10, 0, -3], [0, -3, 0]]
    with pytest.raises(InvalidParameter):
        geometry_service.join_links(first, geometry_service.hopf_link(2))


def test_rescaling_a_link_keeps_its_graph():
    graph = WeightedLinkingGraph.from_matrix([[0, 2], [2, 0]])
    rescaled, degree = geometry_service.rescale_link(graph, 2)
    assert rescaled == graph
    assert degree == 5


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize(
    "weights",
    [
        [[0, 1], [1, 0]],
        [[0, 2, 0], [2, 0, -3], [0, -3, 0]],
        [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]],
        [[0, 0], [0, 0]],
    ],
)
def test_rescaled_link_cohomology_is_degree_rescaled(weights, k):
    graph = WeightedLinkingGraph.from_matrix(weights)
    rescaled, p = geometry_service.rescale_link(graph, k)
    cohomology = geometry_service.link_cohomology(rescaled, p)
    base = geometry_service.link_cohomology(graph, 1)
    assert cohomology.hilbert == base.hilbert.substitute(1, p, 2 * p)
    assert cohomology.products == base.products
    assert cohomology.degree_one_generated == base.degree_one_generated


def test_connectivity():
    assert geometry_service.graph_connected(geometry_service.hopf_link(3))
    assert not geometry_service.graph_connected(WeightedLinkingGraph(2))
    chain = WeightedLinkingGraph.from_matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert geometry_service.graph_connected(chain)


def test_link_cohomology_of_hopf_link():
    cohomology = geometry_service.link_cohomology(geometry_service.hopf_link(3))
    assert list(cohomology.hilbert.coefficients) == [1, 3, 2]
    assert cohomology.degree_one_generated
    presentation = cohomology.presentation
    assert presentation.is_quadratic()
    assert list(algebra_service.hilbert(presentation, 3).coefficients) == [1, 3, 2, 0]


def test_link_cohomology_needs_odd_degree():
    with pytest.raises(InvalidParameter):
        geometry_service.link_cohomology(geometry_service.hopf_link(2), 2)


# ==================== Link reports ====================

@pytest.mark.parametrize("n", [2, 3, 4])
def test_hopf_link_reports(n):
    report = geometry_service.link_report(geometry_service.hopf_link(n), 1, 12)
    assert len(report.holonomy_dims) == 6
    assert report.checks["holonomy_matches_lcs_ranks"] is True
    assert report.checks["semidirect_product_dims"] is True
    assert report.checks["closed_form_product"] is True
    assert report.checks["closed_form_loop"] is True
    assert report.verdict.status == VerdictStatus.PASS
    assert report.coformal is True
    checks = boolean_checks(report.checks)
    assert checks and all(checks.values())
    assert report.checks["identity"] == "eq:hlcs"


def test_hopf_link_closed_forms():
    report = geometry_service.link_report(geometry_service.hopf_link(3), 1, 9)
    expected = PowerSeries.binomial(-1, 3, 9) * PowerSeries.binomial(-2, 3, 9)
    assert report.homotopy_product == expected
    assert report.holonomy_dims[:2] == [3, 1]


def test_unlink_report_fails():
    report = geometry_service.link_report(WeightedLinkingGraph(2), 1, 12)
    assert not report.connected
    assert report.verdict.status == VerdictStatus.FAIL
    assert report.verdict.failing_degree == 2
    assert report.verdict.note == "Rescaling Formula fails: linking graph disconnected"
    assert report.coformal is None


def test_link_report_rejects_bad_k():
    with pytest.raises(InvalidParameter):
        geometry_service.link_report(geometry_service.hopf_link(2), 0, 6)


# ==================== Arrangements ====================

def test_supersolvable_arrangement():
    spec = ArrangementSpec("supersolvable", (1, 2, 3))
    report = geometry_service.arrangement_series(spec, 1, 15)
    assert list(report.poincare.coefficients[:4]) == [1, 6, 11, 6]
    assert report.verdict.status == VerdictStatus.PASS
    assert report.coformal is True
    assert all(boolean_checks(report.checks).values())
    assert report.homotopy_ranks.get(2) == 6


def test_boolean_arrangement():
    spec = ArrangementSpec("boolean", n=2)
    assert spec.factor_exponents == (1, 1)
    report = geometry_service.arrangement_series(spec, 1, 12)
    assert list(report.poincare.coefficients[:3]) == [1, 2, 1]
    assert all(boolean_checks(report.checks).values())


def test_generic_arrangement_candidates():
    report = geometry_service.arrangement_series(ArrangementSpec("generic", n=3, ell=2), 1, 12)
    assert report.verdict.status == VerdictStatus.FAIL
    assert report.checks["extraction_error"] == "NegativeRank"
    assert report.candidates["deviation_degree"] == 7
    assert report.candidates["first_difference"] == 6
    assert report.coformal is None


def test_arrangement_spec_validation():
    with pytest.raises(InvalidParameter):
        ArrangementSpec("supersolvable", ())
    with pytest.raises(InvalidParameter):
        ArrangementSpec("generic", n=2, ell=2)
    with pytest.raises(InvalidParameter):
        ArrangementSpec("boolean")
    with pytest.raises(ValueError):
        ArrangementSpec("hypersolvable", (1,))
