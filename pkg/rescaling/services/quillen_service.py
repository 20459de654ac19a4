"""
Quillen Service - Quillen models of rescaled algebras, their homology, structural Koszul tests
"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Optional, Tuple

from rescaling.config import settings
from rescaling.models.algebra import AlgebraPresentation, AlgebraStructure, Monomial, RescaledAlgebra
from rescaling.models.quillen import CEComplex, QuillenHomology, QuillenModel, first_ce_failure
from rescaling.models.sparse_matrix import rank_of_vectors
from rescaling.models.tensor import GeneratorSet, GradedLieDims, bracket_vectors
from rescaling.models.verdict import Verdict
from rescaling.services.algebra_service import algebra_service
from rescaling.services.tensor_lie_service import tensor_lie_service

logger = logging.getLogger(__name__)


def generator_name(monomial: Monomial) -> str:
    if len(monomial) == 1:
        return f"x{monomial[0] + 1}"
    return "z" + "_".join(str(i + 1) for i in monomial)


class QuillenService:
    """
    Quadratic Quillen models L(B, 0) for B = A[k]

    Features:
    - One generator per normal basis element of B^q, in degree q(2k+1) - 1
    - Quadratic differential dual to the multiplication, checked d o d = 0
    - Homology by homotopy degree and bracket length
    - Koszul test comparing H_* L(A[k], 0) with H(A)[k]
    - Chevalley-Eilenberg test on the holonomy Lie algebra
    """

    def build_quillen_model(self, rescaled: RescaledAlgebra, truncation: int) -> QuillenModel:
        """
        Build L(B, 0) with every generator of degree <= N + 1

        Args:
            rescaled: B = A[k]
            truncation: Top homotopy degree N of interest

        Returns:
            QuillenModel whose differential squares to zero
        """
        algebra = rescaled.base
        scale = rescaled.scale
        structure = AlgebraStructure.of(algebra)
        names, degrees, labels = [], [], []
        index: Dict[Tuple[int, int], int] = {}
        for q in sorted(structure.normal):
            if q == 0 or q * scale - 1 > truncation + 1:
                continue
            for i, monomial in enumerate(structure.normal[q]):
                index[(q, i)] = len(names)
                names.append(generator_name(monomial))
                degrees.append(q * scale - 1)
                labels.append((q, i))
        gens = GeneratorSet(tuple(names), tuple(degrees), signed=True)

        half = Fraction(1, 2)
        differential: Dict[int, Dict] = defaultdict(lambda: defaultdict(Fraction))
        for (p, i), left in index.items():
            for (q, j), right in index.items():
                if (p + q, 0) not in index:
                    continue
                product = structure.multiply(p, i, q, j)
                if not product:
                    continue
                sign = -1 if (p * scale) % 2 else 1
                bracket = bracket_vectors(gens, {(left,): Fraction(1)}, degrees[left], {(right,): Fraction(1)}, degrees[right])
                for a, c in product.items():
                    target = differential[index[(p + q, a)]]
                    for word, value in bracket.items():
                        target[word] += half * sign * c * value
        cleaned = {}
        for g, image in differential.items():
            image = {w: c for w, c in image.items() if c}
            if image:
                cleaned[g] = image

        model = QuillenModel(algebra.name, rescaled.k, gens, labels, cleaned, truncation)
        model.check_square_zero()
        logger.info(f"Quillen model of {algebra.name}[{rescaled.k}]: {len(gens)} generators, degrees {sorted(set(degrees))}")
        return model

    def quillen_homology(self, model: QuillenModel, truncation: Optional[int] = None) -> QuillenHomology:
        """H_{d, l} = dim L_{d, l} - rank(d on L_{d, l}) - rank(d on L_{d+1, l-1})"""
        model.check_square_zero()
        top = model.truncation if truncation is None else min(truncation, model.truncation)
        gens = model.generators
        if not len(gens):
            return QuillenHomology(GradedLieDims({}, top), {})

        ranks: Dict[Tuple[int, int], int] = {}

        def rank(degree: int, length: int) -> int:
            if length < 1:
                return 0
            if (degree, length) not in ranks:
                basis = tensor_lie_service.lie_basis(gens, degree, length)
                ranks[(degree, length)] = rank_of_vectors([model.apply(v) for v in basis])
            return ranks[(degree, length)]

        bigraded: Dict[Tuple[int, int], int] = {}
        dims: Dict[int, int] = defaultdict(int)
        for degree in range(1, top + 1):
            for length in range(1, degree // gens.min_degree + 1):
                size = tensor_lie_service.free_lie_dim(gens, degree, length)
                if not size:
                    continue
                value = size - rank(degree, length) - rank(degree + 1, length - 1)
                bigraded[(degree, length)] = value
                dims[degree] += value
            logger.debug(f"Quillen homology degree {degree}: {dims[degree]}")
        return QuillenHomology(GradedLieDims(dict(dims), top), bigraded)

    def quillen_homology_dims(self, model: QuillenModel, truncation: Optional[int] = None) -> GradedLieDims:
        return self.quillen_homology(model, truncation).dims

    # ==================== Koszul tests ====================

    def koszul_quillen_test(self, algebra: AlgebraPresentation, k: int, truncation: int) -> Verdict:
        """Compare H_* L(A[k], 0) with H(A)[k] degreewise through N"""
        rescaled = algebra_service.rescale_algebra(algebra, k)
        model = self.build_quillen_model(rescaled, truncation)
        homology = self.quillen_homology(model, truncation)
        weight = max(truncation // (2 * k), 1)
        holonomy = algebra_service.holonomy_lie(algebra, weight)
        expected = tensor_lie_service.rescale_lie_dims(holonomy.dims, k)
        expected = GradedLieDims(dict(expected.dims), truncation)
        failing = homology.dims.first_difference(expected)
        details = {
            "quillen_homology": homology.to_dict(),
            "rescaled_holonomy": expected.as_list(),
            "identity": "eq:quillen-koszul",
        }
        if failing is not None:
            found, wanted = homology.dims.get(failing), expected.get(failing)
            logger.info(f"Quillen test on {algebra.name}: fails at degree {failing} ({found} vs {wanted})")
            return Verdict.failed(
                "quillen", failing, note=f"dim H_{failing} = {found}, dim H(A)[k]_{failing} = {wanted}",
                checked_degree=truncation, **details,
            )
        logger.info(f"Quillen test on {algebra.name}: consistent up to degree {truncation}")
        return Verdict.consistent("quillen", truncation, "H_* L(A[k],0) = H(A)[k] through the checked degree", **details)

    def ce_complex(self, algebra: AlgebraPresentation, p_max: int, weight_max: int) -> CEComplex:
        lie = algebra_service.holonomy_quotient(algebra, weight_max)
        return CEComplex(lie, p_max, weight_max)

    def koszul_ce_test(
        self, algebra: AlgebraPresentation, p_max: Optional[int] = None, weight_max: Optional[int] = None
    ) -> Verdict:
        """
        Chevalley-Eilenberg test: H_{p,w}(H(A)) = A^p on the diagonal and 0 off it

        Args:
            algebra: Presented algebra A
            p_max: Largest upper degree p (default CE_MAX_UPPER_DEGREE)
            weight_max: Largest weight w (default CE_MAX_WEIGHT)
        """
        p_max = settings.CE_MAX_UPPER_DEGREE if p_max is None else p_max
        weight_max = settings.CE_MAX_WEIGHT if weight_max is None else weight_max
        complex_ = self.ce_complex(algebra, p_max, weight_max)
        dims = complex_.homology_dims()
        hilb = algebra_service.hilbert(algebra, p_max)
        algebra_dims = {p: int(hilb[p]) for p in range(p_max + 1)}
        table = [{"p": p, "w": w, "dim": v} for (p, w), v in sorted(dims.items()) if v]
        failure = first_ce_failure(dims, algebra_dims)
        if failure is not None:
            p, w, found, wanted = failure
            logger.info(f"CE test on {algebra.name}: H_({p},{w}) = {found}, expected {wanted}")
            return Verdict.failed(
                "ce", w, note=f"H^{p} in weight {w} has dim {found}, expected {wanted}",
                checked_degree=complex_.max_weight, bidegree=[p, w], homology=table,
            )
        logger.info(f"CE test on {algebra.name}: consistent up to weight {complex_.max_weight}")
        return Verdict.consistent(
            "ce", complex_.max_weight, f"upper degree <= {p_max}", homology=table, identity="eq:ce-koszul",
        )


quillen_service = QuillenService()
