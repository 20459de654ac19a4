"""
Tensor Lie Service - degreewise spans, free Lie dimensions, ideals and derivations
"""
import logging
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from sympy import divisors
from sympy.functions.combinatorial.numbers import mobius

from rescaling.config import settings
from rescaling.exceptions import DegreeMismatch, InvalidParameter, NegativeRank, NotPrimitive, UnsupportedSignedCase
from rescaling.models.power_series import PowerSeries
from rescaling.models.quotient_algebra import QuotientAlgebra
from rescaling.models.sparse_matrix import QuotientSpace, TriangularBasis, Vector
from rescaling.models.tensor import (
    GeneratorSet,
    GradedLieDims,
    LieElement,
    LieQuotient,
    Word,
    apply_derivation,
    bracket_with_generator,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _lie_echelon(generators: GeneratorSet, degree: int, length: int) -> TriangularBasis:
    """Echelon basis of the free Lie algebra in a given (degree, bracket length)"""
    if length == 1:
        return TriangularBasis([{(g,): Fraction(1)} for g, d in enumerate(generators.degrees) if d == degree])
    candidates = []
    for g, d in enumerate(generators.degrees):
        rest = degree - d
        if rest < (length - 1) * generators.min_degree:
            continue
        for vector in _lie_echelon(generators, rest, length - 1).vectors():
            candidates.append(bracket_with_generator(generators, g, vector, rest))
    return TriangularBasis(candidates)


def lyndon_words(alphabet: int, max_length: int) -> Iterator[Word]:
    """Lyndon words over 0..alphabet-1 of length <= max_length, in lexicographic order (Duval)"""
    if alphabet < 1 or max_length < 1:
        return
    word = [-1]
    while word:
        word[-1] += 1
        yield tuple(word)
        period = len(word)
        while len(word) < max_length:
            word.append(word[-period])
        while word and word[-1] == alphabet - 1:
            word.pop()


class TensorLieService:
    """
    Graded Lie calculus inside the truncated tensor algebra

    Features:
    - Signed brackets of Lie elements
    - Degreewise bases of free Lie algebras, split by bracket length
    - Ideal spans and quotient dimensions
    - Lyndon and Witt counts as independent oracles
    - Derivations extended from generator images
    - k-rescaling of dimension tables
    """

    # ==================== Brackets and bases ====================

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        return a.bracket(b)

    def lie_basis(self, generators: GeneratorSet, degree: int, length: int = None) -> List[Vector]:
        """Basis vectors of the free Lie algebra in one degree (optionally one bracket length)"""
        if length is not None:
            return _lie_echelon(generators, degree, length).vectors()
        vectors: List[Vector] = []
        for ell in range(1, degree // generators.min_degree + 1):
            vectors.extend(_lie_echelon(generators, degree, ell).vectors())
        return vectors

    def free_lie_dim(self, generators: GeneratorSet, degree: int, length: int = None) -> int:
        if length is not None:
            return _lie_echelon(generators, degree, length).dim
        return len(self.lie_basis(generators, degree))

    def is_lie(self, element: LieElement) -> bool:
        gens = element.generators
        grouped: Dict[Tuple[int, int], Vector] = defaultdict(dict)
        for word, c in element.terms.items():
            if not word:
                return False
            grouped[(gens.word_degree(word), len(word))][word] = c
        return all(_lie_echelon(gens, d, ell).contains(part) for (d, ell), part in grouped.items())

    def ensure_lie(self, element) -> LieElement:
        """Re-type a tensor element as a Lie element after checking it lies in the bracket span"""
        if not self.is_lie(element):
            raise NotPrimitive(f"Element {element.format()} is not in the Lie subspace")
        return LieElement(element.generators, element.truncation, element.terms)

    # ==================== Ideals and quotients ====================

    def _relations_by_degree(self, relations: Sequence[LieElement]) -> Dict[int, List[Vector]]:
        grouped: Dict[int, List[Vector]] = defaultdict(list)
        for relation in relations:
            if relation.is_zero():
                continue
            grouped[relation.degree].append(dict(relation.terms))
        return grouped

    def ideal_bases(
        self, generators: GeneratorSet, relations: Sequence[LieElement], truncation: int
    ) -> Dict[int, TriangularBasis]:
        """
        Degreewise spans of the Lie ideal generated by homogeneous relations

        The degree-d part is spanned by the degree-d relations and the
        brackets [x_g, b] with b running over the ideal in degree d - |x_g|.
        Each bracket is reduced against the rows found so far and kept only
        when it is new.
        """
        by_degree = self._relations_by_degree(relations)
        bases: Dict[int, TriangularBasis] = {}
        for degree in range(1, truncation + 1):
            basis = TriangularBasis(by_degree.get(degree, []))
            for g, d in enumerate(generators.degrees):
                lower = bases.get(degree - d)
                if lower is None:
                    continue
                for v in lower.vectors():
                    basis.insert(bracket_with_generator(generators, g, v, degree - d))
            bases[degree] = basis
        return bases

    def lie_span_dims(
        self, generators: GeneratorSet, relations: Sequence[LieElement], truncation: int
    ) -> GradedLieDims:
        """
        Dimensions of L(generators)/ideal(relations) up to the truncation degree

        Read off the enveloping algebra T(V)/(R) rather than an explicit
        basis; quotient_lie_algebra gives the same numbers the slow way.

        Args:
            generators: Generator set of the free Lie algebra
            relations: Homogeneous Lie elements generating the ideal
            truncation: Top degree N

        Returns:
            GradedLieDims with dim L_d - dim I_d in each degree d <= N, cut
            lower when the enveloping algebra hits its work budget
        """
        envelope = QuotientAlgebra(
            generators, [r.terms for r in relations if not r.is_zero()], truncation, settings.QUOTIENT_MAX_PAIRS
        )
        return self.dims_from_envelope(generators, envelope.hilbert())

    def dims_from_envelope(self, generators: GeneratorSet, hilbert: PowerSeries) -> GradedLieDims:
        """
        Invert PBW: Hilb(U L) = prod (1 - t^d)^(-dim L_d) over even d times
        prod (1 + t^d)^(dim L_d) over odd d, odd only for signed generators
        """
        top = hilbert.order
        accounted = PowerSeries.one(top)
        dims: Dict[int, int] = {}
        for d in range(1, top + 1):
            excess = hilbert[d] - accounted[d]
            if excess < 0 or excess.denominator != 1:
                raise NegativeRank(f"Series {hilbert} is not the Hilbert series of an enveloping algebra (degree {d})")
            dims[d] = int(excess)
            if not dims[d]:
                continue
            if generators.signed and d % 2:
                accounted = accounted * PowerSeries.binomial_power(1, d, dims[d], top)
            else:
                accounted = accounted * PowerSeries.binomial_power(-1, d, -dims[d], top)
        return GradedLieDims(dims, top)

    def quotient_lie_algebra(
        self, generators: GeneratorSet, relations: Sequence[LieElement], truncation: int
    ) -> LieQuotient:
        """
        Quotient L(V)/I degree by degree

        The degree-d spanning set is the degree-d generators and the
        brackets [x_g, r] with r running over quotient representatives in
        degree d - |x_g|; together with I_d it spans L_d, so the quotient
        dimension is rank(spanning set + I_d) - rank(I_d).
        """
        ideal = self.ideal_bases(generators, relations, truncation)
        spaces: Dict[int, QuotientSpace] = {}
        for degree in range(1, truncation + 1):
            space: List[Vector] = [{(g,): Fraction(1)} for g, d in enumerate(generators.degrees) if d == degree]
            for g, d in enumerate(generators.degrees):
                lower = spaces.get(degree - d)
                if lower is None:
                    continue
                space.extend(bracket_with_generator(generators, g, r, degree - d) for r in lower.representatives())
            spaces[degree] = QuotientSpace(space, ideal[degree])
            logger.debug(f"Lie quotient degree {degree}: dim {spaces[degree].dim}, ideal dim {ideal[degree].dim}")
        return LieQuotient(generators, truncation, spaces)

    # ==================== Oracles ====================

    def free_lie_dims_lyndon(self, generators: GeneratorSet, truncation: int) -> GradedLieDims:
        """Free Lie dimensions by counting Lyndon words of each length"""
        if not generators.is_unsigned_uniform():
            raise UnsupportedSignedCase(
                f"Lyndon counting needs generators in one degree without Koszul signs, got {generators.degrees}"
            )
        degree = generators.degrees[0]
        counts: Dict[int, int] = defaultdict(int)
        for word in lyndon_words(len(generators), truncation // degree):
            counts[degree * len(word)] += 1
        return GradedLieDims(dict(counts), truncation)

    def witt_dims(self, n: int, truncation: int, degree: int = 1) -> GradedLieDims:
        """Witt necklace formula (1/q) sum_{e | q} mu(e) n^(q/e) in degree q * degree"""
        dims = {}
        for q in range(1, truncation // degree + 1):
            total = sum(int(mobius(e)) * n ** (q // e) for e in divisors(q))
            dims[q * degree] = total // q
        return GradedLieDims(dims, truncation)

    # ==================== Derivations ====================

    def apply_derivation(
        self, generators: GeneratorSet, images: Mapping[int, Vector], vector: Mapping[Word, Fraction]
    ) -> Vector:
        """Degree -1 derivation of the tensor algebra: Leibniz rule with Koszul signs"""
        return apply_derivation(generators, images, vector)

    def extend_derivation(self, images: Mapping[int, LieElement], element: LieElement) -> LieElement:
        """
        Evaluate the degree -1 derivation with the given generator images

        d[a, b] = [da, b] + (-1)^|a| [a, db]; generators missing from
        `images` are cycles.
        """
        gens = element.generators
        for g, image in images.items():
            if image.generators != gens:
                raise InvalidParameter("Derivation images live over a different generator set")
            if not image.is_zero() and image.degree != gens.degrees[g] - 1:
                raise DegreeMismatch(
                    f"Image of {gens.names[g]} has degree {image.degree}, expected {gens.degrees[g] - 1}"
                )
        if not element.is_homogeneous():
            raise DegreeMismatch(f"Derivations are evaluated on homogeneous elements, got degrees {element.degrees()}")
        vectors = {g: image.terms for g, image in images.items() if not image.is_zero()}
        return LieElement(gens, element.truncation, self.apply_derivation(gens, vectors, element.terms))

    # ==================== Rescaling ====================

    def rescale_lie_dims(self, dims: GradedLieDims, k: int) -> GradedLieDims:
        """L[k]: degree q moves to 2kq, so Hilb(L[k], t) = Hilb(L, t^2k)"""
        if k < 1:
            raise InvalidParameter(f"Rescaling parameter k must be >= 1, got {k}")
        return GradedLieDims({2 * k * q: n for q, n in dims.dims.items()}, 2 * k * dims.truncation)


tensor_lie_service = TensorLieService()
