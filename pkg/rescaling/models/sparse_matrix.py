"""
Sparse Matrix Model - exact linear algebra over the rationals

Elimination is delegated to sympy's DomainMatrix over QQ (sparse SDM
representation). Vectors elsewhere in the toolkit are dicts from hashable
basis keys (words, monomials, wedge tuples) to Fractions; the helpers here
turn lists of such vectors into matrices and back.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Vector = Dict[Hashable, Fraction]


def to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


@dataclass(frozen=True)
class SparseMatrix:
    """rows x cols matrix storing only its nonzero entries"""
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            value = Fraction(value)
            if value != 0:
                cleaned[(i, j)] = value
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "SparseMatrix":
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in row.items()}
        return cls(len(rows), cols, entries)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        cols = len(rows[0]) if rows else 0
        entries = {(i, j): Fraction(v) for i, row in enumerate(rows) for j, v in enumerate(row)}
        return cls(len(rows), cols, entries)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def domain_matrix(self) -> DomainMatrix:
        rows: Dict[int, Dict[int, object]] = {}
        for (i, j), value in self.entries.items():
            rows.setdefault(i, {})[j] = to_qq(value)
        return DomainMatrix(rows, (self.rows, self.cols), QQ)

    def apply(self, vector: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.rows
        for (i, j), value in self.entries.items():
            out[i] += value * vector[j]
        return out

    # ==================== Elimination ====================

    def rref(self) -> Tuple[List[Dict[int, Fraction]], Tuple[int, ...]]:
        """Nonzero rows of the reduced row echelon form, and the pivot columns"""
        if not self.entries:
            return [], ()
        reduced, pivots = self.domain_matrix().rref()
        rows: Dict[int, Dict[int, Fraction]] = {}
        for (i, j), value in reduced.to_dok().items():
            if value:
                rows.setdefault(i, {})[j] = from_qq(value)
        return [rows[i] for i in range(len(pivots))], tuple(pivots)

    def rank(self) -> int:
        if not self.entries:
            return 0
        return self.domain_matrix().rank()

    def kernel_basis(self) -> List[Tuple[Fraction, ...]]:
        """Basis of {v : M v = 0}, one vector per non-pivot column"""
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vector = [Fraction(0)] * self.cols
            vector[free] = Fraction(1)
            for row, pivot in zip(rows, pivots):
                vector[pivot] = -row.get(free, Fraction(0))
            basis.append(tuple(vector))
        return basis

    def independent_rows(self) -> List[int]:
        """Indices of the first maximal linearly independent subset of the rows"""
        _, pivots = self.transpose().rref()
        return list(pivots)


# ==================== Keyed vectors ====================

def matrix_from_vectors(
    vectors: Sequence[Mapping[Hashable, Fraction]],
    columns: Optional[Sequence[Hashable]] = None,
) -> Tuple[SparseMatrix, List[Hashable]]:
    """One row per vector; columns are the sorted union of keys unless given"""
    if columns is None:
        keys = set()
        for vector in vectors:
            keys.update(k for k, v in vector.items() if v != 0)
        columns = sorted(keys)
    index = {key: j for j, key in enumerate(columns)}
    entries = {}
    for i, vector in enumerate(vectors):
        for key, value in vector.items():
            if value != 0:
                entries[(i, index[key])] = value
    return SparseMatrix(len(vectors), len(columns), entries), list(columns)


def rank_of_vectors(vectors: Sequence[Mapping[Hashable, Fraction]]) -> int:
    matrix, _ = matrix_from_vectors(vectors)
    return matrix.rank()


def independent_subset(vectors: Sequence[Mapping[Hashable, Fraction]]) -> List[int]:
    """Indices of a maximal independent subset, chosen greedily in input order"""
    matrix, _ = matrix_from_vectors(vectors)
    if not matrix.entries:
        return []
    return matrix.independent_rows()


class EchelonBasis:
    """
    Reduced echelon basis of the span of keyed vectors

    Each stored row has coefficient 1 at its pivot key and 0 at every other
    pivot key, so reduction is a single pass.
    """

    def __init__(self, vectors: Sequence[Mapping[Hashable, Fraction]]):
        matrix, columns = matrix_from_vectors(vectors)
        rows, pivots = matrix.rref()
        self.pivots: List[Hashable] = [columns[p] for p in pivots]
        self.rows: Dict[Hashable, Vector] = {
            columns[p]: {columns[j]: v for j, v in row.items()}
            for row, p in zip(rows, pivots)
        }

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> List[Vector]:
        return [self.rows[p] for p in self.pivots]

    def reduce(self, vector: Mapping[Hashable, Fraction]) -> Vector:
        residual = {k: Fraction(v) for k, v in vector.items() if v != 0}
        for pivot in self.pivots:
            c = residual.get(pivot)
            if not c:
                continue
            for key, value in self.rows[pivot].items():
                updated = residual.get(key, Fraction(0)) - c * value
                if updated:
                    residual[key] = updated
                else:
                    residual.pop(key, None)
        return residual

    def contains(self, vector: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Mapping[Hashable, Fraction]) -> Optional[List[Fraction]]:
        """Coefficients on the stored rows (pivot order), or None outside the span"""
        if self.reduce(vector):
            return None
        return [Fraction(vector.get(p, 0)) for p in self.pivots]


class TriangularBasis:
    """
    Echelon basis grown one vector at a time

    Each row is stored under its largest key and no two rows share that
    key. Rows are never back-substituted, so they stay about as sparse as
    the vectors that produced them.
    """

    def __init__(self, vectors: Sequence[Mapping[Hashable, Fraction]] = ()):
        self.rows: Dict[Hashable, Vector] = {}
        for vector in vectors:
            self.insert(vector)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> List[Vector]:
        return list(self.rows.values())

    def reduce(self, vector: Mapping[Hashable, Fraction]) -> Vector:
        residual = {k: Fraction(v) for k, v in vector.items() if v}
        while True:
            pivots = [k for k in residual if k in self.rows]
            if not pivots:
                return residual
            pivot = max(pivots)
            c = residual[pivot]
            for key, value in self.rows[pivot].items():
                updated = residual.get(key, Fraction(0)) - c * value
                if updated:
                    residual[key] = updated
                else:
                    residual.pop(key, None)

    def insert(self, vector: Mapping[Hashable, Fraction]) -> bool:
        """Add a vector; False when it already lies in the span"""
        residual = self.reduce(vector)
        if not residual:
            return False
        pivot = max(residual)
        scale = residual[pivot]
        self.rows[pivot] = {k: v / scale for k, v in residual.items()}
        return True

    def contains(self, vector: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vector)


class QuotientSpace:
    """
    Quotient of span(space) by span(sub), where span(sub) lies inside span(space)

    Complement representatives are the space vectors reduced modulo the
    subspace, put in echelon form. `sub` may be given as an EchelonBasis
    or a TriangularBasis.
    """

    def __init__(
        self,
        space: Sequence[Mapping[Hashable, Fraction]],
        sub: Union[EchelonBasis, TriangularBasis, Sequence[Mapping[Hashable, Fraction]]],
    ):
        self.sub = sub if isinstance(sub, (EchelonBasis, TriangularBasis)) else EchelonBasis(sub)
        residuals = [r for r in (self.sub.reduce(v) for v in space) if r]
        self.complement = EchelonBasis(residuals)

    @property
    def dim(self) -> int:
        return self.complement.dim

    def representatives(self) -> List[Vector]:
        return self.complement.vectors()

    def coordinates(self, vector: Mapping[Hashable, Fraction]) -> Optional[List[Fraction]]:
        return self.complement.coordinates(self.sub.reduce(vector))


def matrix_rank(matrix: SparseMatrix) -> int:
    return matrix.rank()


def kernel_basis(matrix: SparseMatrix) -> List[Tuple[Fraction, ...]]:
    return matrix.kernel_basis()
