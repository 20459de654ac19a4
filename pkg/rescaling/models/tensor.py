"""
Tensor Model - generator sets, truncated tensor algebra elements, Lie elements

Graded Lie calculus is carried out inside the free associative algebra
T(V) truncated at a total degree N. A word is a tuple of generator indices;
its degree is the sum of the generator degrees and its bracket length is
its length.

Sign convention: for a signed generator set (a graded Lie algebra in the
Koszul sense) [a, b] = ab - (-1)^{|a||b|} ba. An unsigned set models a Lie
algebra with grading, where [a, b] = ab - ba whatever the degrees.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from rescaling.exceptions import DegreeMismatch, InvalidParameter, TruncationOverflow
from rescaling.models.power_series import PowerSeries
from rescaling.models.sparse_matrix import QuotientSpace

Word = Tuple[int, ...]
Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def _words_of_degree(degrees: Tuple[int, ...], degree: int) -> Tuple[Word, ...]:
    if degree == 0:
        return ((),)
    words = []
    for g, d in enumerate(degrees):
        if d <= degree:
            words.extend((g,) + tail for tail in _words_of_degree(degrees, degree - d))
    return tuple(words)


@dataclass(frozen=True)
class GeneratorSet:
    """Named generators with positive degrees"""
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    signed: bool = True

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise InvalidParameter("Each generator needs exactly one degree")
        if len(set(self.names)) != len(self.names):
            raise InvalidParameter(f"Generator names must be distinct: {self.names}")
        if any(d < 1 for d in self.degrees):
            raise InvalidParameter(f"Generator degrees must be >= 1: {self.degrees}")

    @classmethod
    def uniform(cls, n: int, degree: int = 1, prefix: str = "x", signed: Optional[bool] = None) -> "GeneratorSet":
        """n generators of one degree; degree-1 sets default to the unsigned (bracket-length) convention"""
        if signed is None:
            signed = degree > 1
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)), (degree,) * n, signed)

    def __len__(self) -> int:
        return len(self.names)

    def word_degree(self, word: Word) -> int:
        return sum(self.degrees[g] for g in word)

    def words(self, degree: int) -> Tuple[Word, ...]:
        return _words_of_degree(self.degrees, degree)

    def commutation_sign(self, deg_a: int, deg_b: int) -> int:
        """Sign s in [a, b] = ab - s ba"""
        if self.signed and (deg_a * deg_b) % 2:
            return -1
        return 1

    def koszul_sign(self, degree: int) -> int:
        """Sign picked up when a degree -1 map passes an element of the given degree"""
        if self.signed and degree % 2:
            return -1
        return 1

    def is_unsigned_uniform(self) -> bool:
        """All generators in one degree, and no Koszul signs ever arise"""
        if not self.degrees or len(set(self.degrees)) != 1:
            return False
        return self.degrees[0] % 2 == 0 or not self.signed

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.degrees else 1

    def format_word(self, word: Word) -> str:
        return " ".join(self.names[g] for g in word) if word else "1"


class TensorElement:
    """
    Element of the tensor algebra on a generator set, truncated at degree N

    Treated as immutable. Stored words never exceed the truncation degree.
    """
    __slots__ = ("generators", "truncation", "terms")

    def __init__(self, generators: GeneratorSet, truncation: int, terms: Optional[Mapping[Word, Scalar]] = None):
        clean: Dict[Word, Fraction] = {}
        for word, value in (terms or {}).items():
            value = Fraction(value)
            if value == 0:
                continue
            if generators.word_degree(word) > truncation:
                raise TruncationOverflow(
                    f"Word {generators.format_word(word)} exceeds truncation degree {truncation}"
                )
            clean[tuple(word)] = value
        self.generators = generators
        self.truncation = truncation
        self.terms = clean

    # ==================== Constructors ====================

    @classmethod
    def zero(cls, generators: GeneratorSet, truncation: int):
        return cls(generators, truncation)

    @classmethod
    def one(cls, generators: GeneratorSet, truncation: int):
        return cls(generators, truncation, {(): 1})

    @classmethod
    def generator(cls, generators: GeneratorSet, index: int, truncation: int):
        return cls(generators, truncation, {(index,): 1})

    @classmethod
    def truncated(cls, generators: GeneratorSet, truncation: int, terms: Mapping[Word, Scalar]):
        """Build while silently dropping words above the truncation degree"""
        kept = {w: c for w, c in terms.items() if generators.word_degree(w) <= truncation}
        return cls(generators, truncation, kept)

    def _like(self, terms: Mapping[Word, Scalar], truncation: Optional[int] = None):
        return type(self)(self.generators, self.truncation if truncation is None else truncation, terms)

    # ==================== Inspection ====================

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def degrees(self) -> List[int]:
        return sorted({self.generators.word_degree(w) for w in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degrees = self.degrees()
        if len(degrees) != 1:
            raise DegreeMismatch(f"Element is not homogeneous of a single degree: {degrees}")
        return degrees[0]

    @property
    def filtration_order(self) -> Optional[int]:
        """Least degree with a nonzero component (None for zero)"""
        degrees = self.degrees()
        return degrees[0] if degrees else None

    def homogeneous_part(self, degree: int):
        return self._like({w: c for w, c in self.terms.items() if self.generators.word_degree(w) == degree})

    def parts(self) -> Iterator[Tuple[int, Dict[Word, Fraction]]]:
        grouped: Dict[int, Dict[Word, Fraction]] = defaultdict(dict)
        for word, c in self.terms.items():
            grouped[self.generators.word_degree(word)][word] = c
        for degree in sorted(grouped):
            yield degree, grouped[degree]

    def length_part(self, length: int):
        return self._like({w: c for w, c in self.terms.items() if len(w) == length})

    def with_truncation(self, truncation: int):
        return type(self).truncated(self.generators, truncation, self.terms)

    def _check_compatible(self, other: "TensorElement") -> int:
        if other.generators != self.generators:
            raise InvalidParameter("Elements live over different generator sets")
        return min(self.truncation, other.truncation)

    # ==================== Linear structure ====================

    def __add__(self, other: "TensorElement"):
        truncation = self._check_compatible(other)
        terms: Dict[Word, Fraction] = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return type(self).truncated(self.generators, truncation, terms)

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "TensorElement"):
        return self + (-other)

    def scale(self, factor: Scalar):
        factor = Fraction(factor)
        return self._like({w: c * factor for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self.product(other)
        return self.scale(other)

    def __rmul__(self, other: Scalar):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.generators == other.generators and self.terms == other.terms

    __hash__ = None

    # ==================== Associative structure ====================

    def product(self, other: "TensorElement") -> "TensorElement":
        """Concatenation product in the truncated tensor algebra (words above N are dropped)"""
        truncation = self._check_compatible(other)
        gens = self.generators
        right = [(w, c, gens.word_degree(w)) for w, c in other.terms.items()]
        terms: Dict[Word, Fraction] = defaultdict(Fraction)
        for wa, ca in self.terms.items():
            da = gens.word_degree(wa)
            for wb, cb, db in right:
                if da + db <= truncation:
                    terms[wa + wb] += ca * cb
        return TensorElement(gens, truncation, terms)

    def format(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word in sorted(self.terms, key=lambda w: (self.generators.word_degree(w), w)):
            c = self.terms[word]
            pieces.append(f"{c} {self.generators.format_word(word)}" if c != 1 else self.generators.format_word(word))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.format()} (N={self.truncation})>"


class LieElement(TensorElement):
    """Tensor element lying in the span of iterated signed brackets of generators"""
    __slots__ = ()

    def bracket(self, other: "LieElement", truncate: bool = False) -> "LieElement":
        """
        Graded commutator, extended bilinearly over homogeneous components

        A component pair whose degrees add up beyond N raises
        TruncationOverflow unless `truncate` is set, in which case it is
        dropped (the bracket is then taken modulo degrees above N).
        """
        truncation = self._check_compatible(other)
        gens = self.generators
        terms: Dict[Word, Fraction] = defaultdict(Fraction)
        other_parts = list(other.parts())
        for da, pa in self.parts():
            for db, pb in other_parts:
                if da + db > truncation:
                    if truncate:
                        continue
                    raise TruncationOverflow(
                        f"Bracket of degrees {da} and {db} exceeds truncation degree {truncation}"
                    )
                sign = gens.commutation_sign(da, db)
                for wa, ca in pa.items():
                    for wb, cb in pb.items():
                        terms[wa + wb] += ca * cb
                        terms[wb + wa] -= sign * ca * cb
        return LieElement(gens, truncation, terms)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    return a.bracket(b)


@dataclass
class GradedLieDims:
    """Dimensions of a graded Lie algebra (or graded vector space) by degree"""
    dims: Dict[int, int] = field(default_factory=dict)
    truncation: int = 0

    def __post_init__(self):
        self.dims = {d: n for d, n in self.dims.items() if n and d <= self.truncation}

    @classmethod
    def from_list(cls, values: Sequence[int], start: int = 1) -> "GradedLieDims":
        return cls({start + i: v for i, v in enumerate(values)}, start + len(values) - 1)

    def get(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def as_list(self, truncation: Optional[int] = None) -> List[int]:
        top = self.truncation if truncation is None else truncation
        return [self.get(d) for d in range(1, top + 1)]

    def support(self) -> List[int]:
        return sorted(self.dims)

    def restricted(self, truncation: int) -> "GradedLieDims":
        return GradedLieDims(dict(self.dims), min(truncation, self.truncation))

    def series(self, order: Optional[int] = None) -> PowerSeries:
        """Hilbert series sum dim_d t^d"""
        top = self.truncation if order is None else order
        return PowerSeries.of([0] + self.as_list(top), top)

    def first_difference(self, other: "GradedLieDims") -> Optional[int]:
        for d in range(1, min(self.truncation, other.truncation) + 1):
            if self.get(d) != other.get(d):
                return d
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLieDims):
            return NotImplemented
        return self.truncation == other.truncation and self.dims == other.dims

    def to_dict(self) -> Dict:
        return {"truncation": self.truncation, "dims": {str(d): n for d, n in sorted(self.dims.items())}}


# ==================== Keyed-vector brackets ====================

def bracket_vectors(
    generators: GeneratorSet,
    a: Mapping[Word, Fraction],
    deg_a: int,
    b: Mapping[Word, Fraction],
    deg_b: int,
) -> Dict[Word, Fraction]:
    """[a, b] for homogeneous vectors of known degrees, as a word -> coefficient dict"""
    sign = generators.commutation_sign(deg_a, deg_b)
    out: Dict[Word, Fraction] = defaultdict(Fraction)
    for wa, ca in a.items():
        for wb, cb in b.items():
            out[wa + wb] += ca * cb
            out[wb + wa] -= sign * ca * cb
    return {w: c for w, c in out.items() if c}


def bracket_with_generator(
    generators: GeneratorSet, index: int, vector: Mapping[Word, Fraction], degree: int
) -> Dict[Word, Fraction]:
    """[x_index, vector] for a homogeneous vector of the given degree"""
    sign = generators.commutation_sign(generators.degrees[index], degree)
    out: Dict[Word, Fraction] = defaultdict(Fraction)
    for w, c in vector.items():
        out[(index,) + w] += c
        out[w + (index,)] -= sign * c
    return {w: c for w, c in out.items() if c}


Key = Tuple[int, int]


@dataclass
class LieQuotient:
    """
    Truncation of a finitely presented graded Lie algebra L(V)/I

    Basis elements are keyed (degree, index). Their representatives are
    Lie elements of the free algebra, reduced modulo the ideal.
    """
    generators: GeneratorSet
    truncation: int
    spaces: Dict[int, QuotientSpace]

    @property
    def dims(self) -> GradedLieDims:
        return GradedLieDims({d: space.dim for d, space in self.spaces.items()}, self.truncation)

    def basis(self) -> List[Key]:
        return [(d, i) for d in sorted(self.spaces) for i in range(self.spaces[d].dim)]

    def representative(self, key: Key) -> Dict[Word, Fraction]:
        degree, index = key
        return self.spaces[degree].representatives()[index]

    def coordinates(self, vector: Mapping[Word, Fraction], degree: int) -> Dict[Key, Fraction]:
        if degree > self.truncation or degree not in self.spaces:
            return {}
        coords = self.spaces[degree].coordinates(vector)
        if coords is None:
            raise DegreeMismatch(f"Vector does not lie in the degree-{degree} Lie span")
        return {(degree, i): c for i, c in enumerate(coords) if c}

    def bracket(self, a: Key, b: Key) -> Dict[Key, Fraction]:
        """Structure constants of [a, b]; zero beyond the truncation"""
        degree = a[0] + b[0]
        if degree > self.truncation:
            return {}
        vector = bracket_vectors(self.generators, self.representative(a), a[0], self.representative(b), b[0])
        return self.coordinates(vector, degree)

    def structure_constants(self) -> Dict[Tuple[Key, Key], Dict[Key, Fraction]]:
        keys = self.basis()
        table = {}
        for i, a in enumerate(keys):
            for b in keys[i:]:
                value = self.bracket(a, b)
                if value:
                    table[(a, b)] = value
        return table


def apply_derivation(
    generators: GeneratorSet, images: Mapping[int, Mapping[Word, Fraction]], vector: Mapping[Word, Fraction]
) -> Dict[Word, Fraction]:
    """
    Degree -1 derivation of the tensor algebra fixed by generator images

    d(g_1 ... g_m) = sum_i (-1)^{|g_1| + ... + |g_{i-1}|} g_1 ... d(g_i) ... g_m
    """
    out: Dict[Word, Fraction] = defaultdict(Fraction)
    for word, c in vector.items():
        prefix_degree = 0
        for i, g in enumerate(word):
            image = images.get(g)
            if image:
                sign = generators.koszul_sign(prefix_degree)
                prefix, suffix = word[:i], word[i + 1:]
                for iw, ic in image.items():
                    out[prefix + iw + suffix] += sign * c * ic
            prefix_degree += generators.degrees[g]
    return {w: v for w, v in out.items() if v}
