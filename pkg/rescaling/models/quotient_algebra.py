"""
Quotient Algebra Model - T(V)/(R) built degree by degree

Degree d of the quotient is cut out of the formal span of pairs (b, g),
with b a basis element of U_{d-|g|} and x_g a generator. Modulo the lower
part of the two-sided ideal, the new relations in degree d are the
products b r with b running over a basis of U_{d-|r|}. Rows are kept in
echelon form with the largest pair as pivot, so the surviving pairs are
normal words and a reduction never revisits a pivot.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from rescaling.exceptions import DegreeMismatch
from rescaling.models.power_series import PowerSeries
from rescaling.models.sparse_matrix import TriangularBasis
from rescaling.models.tensor import GeneratorSet, Word

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Coordinates = Dict[int, Fraction]


class DegreeComponent(TriangularBasis):
    """One degree of the quotient: relation rows on pairs and the normal pairs left over"""

    def __init__(self, degree: int, size: int):
        super().__init__()
        self.degree = degree
        self.size = size
        self.normal: List[Pair] = []
        self.index: Dict[Pair, int] = {}

    @property
    def dim(self) -> int:
        return self.size - len(self.rows)

    def close(self, pairs: Sequence[Pair]) -> None:
        self.normal = [p for p in pairs if p not in self.rows]
        self.index = {p: i for i, p in enumerate(self.normal)}

    def coordinates(self, vector: Mapping[Pair, Fraction]) -> Coordinates:
        return {self.index[p]: c for p, c in self.reduce(vector).items()}


class QuotientAlgebra:
    """
    Graded associative algebra T(V)/(R) for homogeneous relations R

    Features:
    - Degreewise dimensions and the Hilbert series
    - Normal words (a monomial basis) in every computed degree
    - Right multiplication by generators and words, in normal coordinates
    - A work budget on the number of pairs per degree
    """

    def __init__(
        self,
        generators: GeneratorSet,
        relations: Sequence[Mapping[Word, Fraction]],
        truncation: int,
        budget: Optional[int] = None,
    ):
        self.generators = generators
        self.truncation = truncation
        self.relations: Dict[int, List[Dict[Word, Fraction]]] = {}
        for relation in relations:
            terms = {tuple(w): Fraction(c) for w, c in relation.items() if c}
            if not terms:
                continue
            degrees = {generators.word_degree(w) for w in terms}
            if len(degrees) != 1 or () in terms:
                raise DegreeMismatch(f"Relations must be homogeneous of positive degree, got degrees {sorted(degrees)}")
            self.relations.setdefault(degrees.pop(), []).append(terms)
        unit = DegreeComponent(0, 1)
        unit.close([(0, -1)])
        self.components: Dict[int, DegreeComponent] = {0: unit}
        self.computed_degree = 0
        self._build(budget)

    # ==================== Construction ====================

    def _pairs(self, degree: int) -> List[Pair]:
        pairs = []
        for g, d in enumerate(self.generators.degrees):
            lower = self.components.get(degree - d)
            if lower is not None:
                pairs.extend((b, g) for b in range(lower.dim))
        return pairs

    def _build(self, budget: Optional[int]) -> None:
        for degree in range(1, self.truncation + 1):
            size = sum(
                self.components[degree - d].dim
                for d in self.generators.degrees if degree - d in self.components
            )
            if budget is not None and size > budget:
                logger.warning(f"Quotient algebra stopped at degree {degree - 1}: {size} pairs exceed the budget {budget}")
                break
            component = DegreeComponent(degree, size)
            self.components[degree] = component
            for e, relations in sorted(self.relations.items()):
                lower = self.components.get(degree - e)
                if lower is None:
                    continue
                for b in range(lower.dim):
                    for relation in relations:
                        component.insert(self._left_multiple(degree - e, b, relation))
            component.close(self._pairs(degree))
            self.computed_degree = degree
            logger.debug(f"Quotient algebra degree {degree}: {size} pairs, dim {component.dim}")

    def _left_multiple(self, degree: int, basis: int, relation: Mapping[Word, Fraction]) -> Dict[Pair, Fraction]:
        """b * r as a vector on the pairs of degree |b| + |r|"""
        out: Dict[Pair, Fraction] = {}
        for word, c in relation.items():
            prefix = self.times_word(degree, {basis: Fraction(1)}, word[:-1])
            for index, value in prefix.items():
                key = (index, word[-1])
                updated = out.get(key, Fraction(0)) + c * value
                if updated:
                    out[key] = updated
                else:
                    out.pop(key, None)
        return out

    # ==================== Arithmetic ====================

    def times_generator(self, degree: int, vector: Coordinates, g: int) -> Coordinates:
        """Right multiplication by x_g of an element of degree `degree`"""
        target = self.components[degree + self.generators.degrees[g]]
        return target.coordinates({(i, g): c for i, c in vector.items()})

    def times_word(self, degree: int, vector: Coordinates, word: Word) -> Coordinates:
        for g in word:
            if not vector:
                break
            vector = self.times_generator(degree, vector, g)
            degree += self.generators.degrees[g]
        return vector

    # ==================== Views ====================

    def dims(self) -> Dict[int, int]:
        return {d: c.dim for d, c in sorted(self.components.items())}

    def hilbert(self) -> PowerSeries:
        top = self.computed_degree
        return PowerSeries.of([self.components[d].dim for d in range(top + 1)], top)

    def normal_words(self, degree: int) -> List[Word]:
        """Words of the normal pairs: a monomial basis in one degree"""
        if degree == 0:
            return [()]
        lower: Dict[int, List[Word]] = {}
        words = []
        for b, g in self.components[degree].normal:
            d = degree - self.generators.degrees[g]
            if d not in lower:
                lower[d] = self.normal_words(d)
            words.append(lower[d][b] + (g,))
        return words
