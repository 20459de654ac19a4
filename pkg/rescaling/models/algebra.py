"""
Algebra Models - graded-commutative algebras presented as exterior-algebra quotients

A = Lambda(e_1..e_n) / (relations), all generators in degree 1. Exterior
monomials are strictly increasing tuples of 0-based generator indices and
basis order is lexicographic on those tuples. Elements are dicts monomial ->
Fraction.

The quadratic dual lives on dual generators x_1..x_n of the tensor algebra.
Its relation space is the annihilator of R_2 under the determinant pairing
<e_i e_j, x_i x_j - x_j x_i> = 1 (i < j), so A^! is presented by commutator
relations sum c_ij [x_i, x_j].
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from rescaling.config import settings
from rescaling.exceptions import InvalidParameter, QuadraticRequired
from rescaling.models.power_series import PowerSeries
from rescaling.models.quotient_algebra import QuotientAlgebra
from rescaling.models.sparse_matrix import EchelonBasis, Vector, matrix_from_vectors
from rescaling.models.tensor import GeneratorSet, GradedLieDims, LieElement

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Element = Dict[Monomial, Fraction]


# ==================== Exterior arithmetic ====================

def monomials(n: int, degree: int) -> List[Monomial]:
    return list(combinations(range(n), degree))


def wedge_monomials(a: Monomial, b: Monomial) -> Tuple[int, Optional[Monomial]]:
    """e_a * e_b = sign * e_c, or (0, None) when an index repeats"""
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def wedge(x: Mapping[Monomial, Fraction], y: Mapping[Monomial, Fraction]) -> Element:
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for ma, ca in x.items():
        for mb, cb in y.items():
            sign, mc = wedge_monomials(ma, mb)
            if sign:
                out[mc] += sign * ca * cb
    return {m: c for m, c in out.items() if c}


def sort_monomial(indices: Sequence[int]) -> Tuple[int, Optional[Monomial]]:
    """Sign of the sorting permutation and the sorted monomial; (0, None) on a repeated index"""
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


# ==================== Presentations ====================

@dataclass
class AlgebraPresentation:
    """Connected graded-commutative algebra Lambda(e_1..e_n) / (relations)"""
    n: int
    relations: List[Element] = field(default_factory=list)
    truncation: int = settings.DEFAULT_TRUNCATION
    name: str = ""

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter(f"Number of generators must be >= 0, got {self.n}")
        cleaned = []
        for relation in self.relations:
            element = {}
            for monomial, value in relation.items():
                monomial = tuple(monomial)
                if any(i < 0 or i >= self.n for i in monomial) or list(monomial) != sorted(set(monomial)):
                    raise InvalidParameter(f"Bad exterior monomial {monomial} for n={self.n}")
                value = Fraction(value)
                if value:
                    element[monomial] = element.get(monomial, Fraction(0)) + value
            element = {m: c for m, c in element.items() if c}
            if not element:
                continue
            degrees = {len(m) for m in element}
            if len(degrees) != 1:
                raise InvalidParameter(f"Relation is not homogeneous: degrees {sorted(degrees)}")
            if degrees.pop() < 2:
                raise InvalidParameter("Relations must have degree >= 2")
            cleaned.append(element)
        self.relations = cleaned

    # ==================== Factories ====================

    @classmethod
    def from_monomials(cls, n: int, relations: Sequence[Sequence[Tuple[Sequence[int], Fraction]]], **kwargs):
        """Relations as lists of (1-based monomial indices, coefficient) pairs"""
        converted = []
        for relation in relations:
            element: Element = defaultdict(Fraction)
            for indices, coefficient in relation:
                sign, monomial = sort_monomial([i - 1 for i in indices])
                if sign:
                    element[monomial] += sign * Fraction(coefficient)
            converted.append(dict(element))
        return cls(n, converted, **kwargs)

    @classmethod
    def exterior(cls, n: int, **kwargs) -> "AlgebraPresentation":
        return cls(n, [], name=kwargs.pop("name", f"exterior-n{n}"), **kwargs)

    @classmethod
    def torus(cls, n: int, **kwargs) -> "AlgebraPresentation":
        """Cohomology of the n-torus: the full exterior algebra"""
        return cls(n, [], name=kwargs.pop("name", f"torus-n{n}"), **kwargs)

    @classmethod
    def wedge_of_circles(cls, n: int, **kwargs) -> "AlgebraPresentation":
        relations = [{m: Fraction(1)} for m in monomials(n, 2)]
        return cls(n, relations, name=kwargs.pop("name", f"wedge-n{n}"), **kwargs)

    @classmethod
    def surface(cls, g: int, **kwargs) -> "AlgebraPresentation":
        """
        Closed orientable surface of genus g: e_{2a-1} e_{2a} all equal the
        top class, every other product of degree-1 classes vanishes
        """
        if g < 1:
            raise InvalidParameter(f"Genus must be >= 1, got {g}")
        n = 2 * g
        symplectic = [(2 * a, 2 * a + 1) for a in range(g)]
        relations = [{m: Fraction(1)} for m in monomials(n, 2) if m not in symplectic]
        relations += [{symplectic[0]: Fraction(1), pair: Fraction(-1)} for pair in symplectic[1:]]
        return cls(n, relations, name=kwargs.pop("name", f"surface-g{g}"), **kwargs)

    @classmethod
    def generic(cls, n: int, ell: int, **kwargs) -> "AlgebraPresentation":
        """Exterior algebra truncated above degree ell (generic arrangement of n hyperplanes in C^ell)"""
        if not n > ell >= 1:
            raise InvalidParameter(f"Generic arrangements need n > ell >= 1, got n={n}, ell={ell}")
        relations = [{m: Fraction(1)} for m in monomials(n, ell + 1)]
        return cls(n, relations, name=kwargs.pop("name", f"generic-n{n}-l{ell}"), **kwargs)

    # ==================== Structure ====================

    def relation_degrees(self) -> List[int]:
        return sorted({len(next(iter(r))) for r in self.relations})

    def is_quadratic(self) -> bool:
        return all(d == 2 for d in self.relation_degrees())

    def ideal_bases(self, top: Optional[int] = None) -> Dict[int, EchelonBasis]:
        """
        Degreewise spans of the ideal generated by the relations

        Graded commutativity makes the ideal one-sided, and degree-1
        generation means I_d = R_d + e_1 I_{d-1} + ... + e_n I_{d-1}.
        """
        top = self.n if top is None else min(top, self.n)
        by_degree: Dict[int, List[Element]] = defaultdict(list)
        for relation in self.relations:
            by_degree[len(next(iter(relation)))].append(relation)
        bases: Dict[int, EchelonBasis] = {}
        previous: List[Vector] = []
        for degree in range(0, top + 1):
            candidates = list(by_degree.get(degree, []))
            for i in range(self.n):
                candidates.extend(wedge({(i,): Fraction(1)}, v) for v in previous)
            candidates = [c for c in candidates if c]
            bases[degree] = EchelonBasis(candidates)
            previous = bases[degree].vectors()
        return bases

    def degree_two_relations(self) -> EchelonBasis:
        return self.ideal_bases(2).get(2, EchelonBasis([]))

    def quadratic_closure(self) -> "AlgebraPresentation":
        """Same generators, only the degree-2 relations"""
        return AlgebraPresentation(
            self.n, [r for r in self.relations if len(next(iter(r))) == 2], self.truncation, f"{self.name}-quadratic"
        )

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "n": self.n,
            "relations": [
                [{"monomial": [i + 1 for i in m], "coefficient": c} for m, c in sorted(r.items())]
                for r in self.relations
            ],
        }


@dataclass
class AlgebraStructure:
    """
    Normal-monomial basis and multiplication of a presented algebra

    The normal monomials of degree q are the non-pivot monomials of the
    reduced echelon basis of I_q; every class has a unique representative
    supported on them.
    """
    algebra: AlgebraPresentation
    ideal: Dict[int, EchelonBasis]
    normal: Dict[int, List[Monomial]]

    @classmethod
    def of(cls, algebra: AlgebraPresentation) -> "AlgebraStructure":
        ideal = algebra.ideal_bases()
        normal = {}
        for degree, basis in ideal.items():
            pivots = set(basis.pivots)
            normal[degree] = [m for m in monomials(algebra.n, degree) if m not in pivots]
        return cls(algebra, ideal, normal)

    def dim(self, degree: int) -> int:
        return len(self.normal.get(degree, []))

    def top_degree(self) -> int:
        return max((d for d, basis in self.normal.items() if basis), default=0)

    def normal_form(self, element: Mapping[Monomial, Fraction]) -> Element:
        if not element:
            return {}
        degree = len(next(iter(element)))
        if degree not in self.ideal:
            return {}
        return self.ideal[degree].reduce(element)

    def multiply(self, p: int, i: int, q: int, j: int) -> Dict[int, Fraction]:
        """Product of normal basis elements (p, i) and (q, j) as coordinates in degree p + q"""
        if p + q not in self.normal:
            return {}
        product_ = self.normal_form(wedge({self.normal[p][i]: Fraction(1)}, {self.normal[q][j]: Fraction(1)}))
        index = {m: a for a, m in enumerate(self.normal[p + q])}
        return {index[m]: c for m, c in product_.items()}


@dataclass
class RescaledAlgebra:
    """A[k]: the same algebra with degree q moved to q(2k+1)"""
    base: AlgebraPresentation
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParameter(f"Rescaling parameter k must be >= 1, got {self.k}")

    @property
    def scale(self) -> int:
        return 2 * self.k + 1

    def degree_of(self, q: int) -> int:
        return q * self.scale


# ==================== Quadratic dual ====================

TensorWord = Tuple[int, ...]


def _forbidden_count(n: int, forbidden: set, degree: int) -> int:
    """Number of words of the given length over n letters avoiding the forbidden 2-letter factors"""
    if degree == 0:
        return 1
    counts = [1] * n
    for _ in range(degree - 1):
        counts = [sum(counts[a] for a in range(n) if (a, b) not in forbidden) for b in range(n)]
    return sum(counts)


@dataclass
class QuadraticDual:
    """
    A^! = T(x_1..x_n) / (R^perp), relations stored as vectors on 2-letter words
    """
    n: int
    relations: List[Dict[TensorWord, Fraction]]
    primal_relations: List[Dict[Monomial, Fraction]]
    computed_degree: Optional[int] = None
    pbw: Optional[bool] = None

    def commutator_coefficients(self) -> List[Dict[Monomial, Fraction]]:
        """R^perp on the exterior pair basis: relation sum c_ij [x_i, x_j] as {(i, j): c_ij}"""
        return [{(i, j): c for (i, j), c in r.items() if i < j} for r in self.relations]

    def double_dual_holds(self) -> bool:
        """(R^perp)^perp == R on the pair basis"""
        pairs = monomials(self.n, 2)
        annihilator = _annihilator(self.commutator_coefficients(), pairs)
        ours, theirs = EchelonBasis(annihilator), EchelonBasis(self.primal_relations)
        return ours.dim == theirs.dim and all(ours.contains(v) for v in self.primal_relations)

    def leading_words(self) -> List[TensorWord]:
        """Deg-lex leading words of the reduced relation basis (largest word first)"""
        columns = sorted(product(range(self.n), repeat=2), reverse=True)
        matrix, cols = matrix_from_vectors(self.relations, columns)
        _, pivots = matrix.rref()
        return [cols[p] for p in pivots]

    def _exact_dims(self, top: int, budget: int) -> Dict[int, int]:
        quotient = QuotientAlgebra(GeneratorSet.uniform(self.n), self.relations, top, budget)
        return quotient.dims()

    def hilbert(self, order: int, budget: Optional[int] = None) -> PowerSeries:
        """
        Hilbert series of A^! through `order`, or through `computed_degree`
        when the work budget runs out first

        If the deg-lex leading words form a quadratic Groebner basis
        (checked by the exact degree-3 dimension) the normal-word count is
        exact in every degree.
        """
        budget = settings.QUOTIENT_MAX_PAIRS if budget is None else budget
        forbidden = set(self.leading_words())
        exact = self._exact_dims(min(order, 3), budget)
        self.pbw = (3 in exact or order < 3) and all(
            exact[d] == _forbidden_count(self.n, forbidden, d) for d in exact
        )
        if self.pbw:
            self.computed_degree = order
            return PowerSeries.of([_forbidden_count(self.n, forbidden, d) for d in range(order + 1)], order)
        exact = self._exact_dims(order, budget)
        self.computed_degree = max(exact)
        return PowerSeries.of([exact[d] for d in range(self.computed_degree + 1)], self.computed_degree)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "relations": [
                {f"x{i + 1} x{j + 1}": c for (i, j), c in sorted(r.items())} for r in self.relations
            ],
            "pbw": self.pbw,
        }


def _annihilator(vectors: Sequence[Mapping[Monomial, Fraction]], pairs: Sequence[Monomial]) -> List[Element]:
    matrix, cols = matrix_from_vectors(list(vectors), pairs)
    return [{cols[j]: c for j, c in enumerate(v) if c} for v in matrix.kernel_basis()]


def dual_from_relations(n: int, degree_two: Sequence[Mapping[Monomial, Fraction]]) -> QuadraticDual:
    """Build A^! from a spanning set of R_2 (exterior pair coordinates)"""
    pairs = monomials(n, 2)
    perp = _annihilator(degree_two, pairs)
    relations = []
    for c in perp:
        vector: Dict[TensorWord, Fraction] = {}
        for (i, j), value in c.items():
            vector[(i, j)] = value
            vector[(j, i)] = -value
        relations.append(vector)
    return QuadraticDual(n, relations, [dict(r) for r in degree_two])


def require_quadratic(algebra: AlgebraPresentation) -> None:
    if not algebra.is_quadratic():
        raise QuadraticRequired(f"Relations of {algebra.name or 'the algebra'} sit in degrees {algebra.relation_degrees()}")


@dataclass
class HolonomyLie:
    """H(A) = L(A_1) / ideal(im nabla), graded by bracket length"""
    algebra_name: str
    generators: GeneratorSet
    relations: List[LieElement]
    dims: GradedLieDims

    def to_dict(self) -> Dict:
        return {
            "algebra": self.algebra_name,
            "relations": [r.format() for r in self.relations],
            "dims": self.dims.as_list(),
        }
