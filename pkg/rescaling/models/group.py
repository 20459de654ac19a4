"""
Group Models - free group words, Malcev Lie elements, link derivations, loop coalgebras

Malcev elements live in the free Lie algebra on n degree-1 generators,
completed by bracket length and truncated at length r. Group words are
kept freely reduced, letters are (generator index, +1 or -1).
"""
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from rescaling.exceptions import DegreeMismatch, InvalidParameter, NotNilpotent
from rescaling.models.sparse_matrix import EchelonBasis
from rescaling.models.tensor import GeneratorSet, Key, LieElement, LieQuotient

Letter = Tuple[int, int]
LieVector = Dict[Key, Fraction]

_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def malcev_generators(n: int) -> GeneratorSet:
    """n unsigned degree-1 generators x1..xn; degree is bracket length"""
    return GeneratorSet.uniform(n, 1, prefix="x", signed=False)


# ==================== Free group words ====================

@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word in the free group F_n"""
    n: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for index, exponent in self.letters:
            if not 0 <= index < self.n:
                raise InvalidParameter(f"Letter x{index + 1} outside the free group on {self.n} generators")
            if exponent not in (1, -1):
                raise InvalidParameter(f"Letter exponents are +1 or -1, got {exponent}")
        reduced: List[Letter] = []
        for letter in self.letters:
            if reduced and reduced[-1] == (letter[0], -letter[1]):
                reduced.pop()
            else:
                reduced.append(letter)
        object.__setattr__(self, "letters", tuple(reduced))

    @classmethod
    def identity(cls, n: int) -> "GroupWord":
        return cls(n)

    @classmethod
    def generator(cls, n: int, index: int, exponent: int = 1) -> "GroupWord":
        return cls(n, ((index, exponent),))

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "GroupWord":
        """
        Parse the word syntax "x1 x2^-1 x3^2" (1-based generators)

        An empty string or "1" is the identity. Without `n`, the free group
        has as many generators as the largest index used.
        """
        letters: List[Letter] = []
        for token in text.replace("*", " ").split():
            if token == "1":
                continue
            match = _TOKEN.match(token)
            if not match:
                raise InvalidParameter(f"Cannot parse group word token '{token}'")
            index = int(match.group(1)) - 1
            power = int(match.group(2) or 1)
            if index < 0:
                raise InvalidParameter(f"Generators are numbered from 1, got '{token}'")
            letters.extend([(index, 1 if power > 0 else -1)] * abs(power))
        if n is None:
            n = max((i for i, _ in letters), default=-1) + 1
        return cls(n, tuple(letters))

    @classmethod
    def commutator(cls, a: "GroupWord", b: "GroupWord") -> "GroupWord":
        """(a, b) = a b a^-1 b^-1"""
        return a * b * a.inverse() * b.inverse()

    @classmethod
    def nested_commutator(cls, n: int, indices: Sequence[int]) -> "GroupWord":
        """(x_i1, (x_i2, ..., (x_i(s-1), x_is))) in the s-th lower central series term"""
        if not indices:
            raise InvalidParameter("A nested commutator needs at least one generator")
        word = cls.generator(n, indices[-1])
        for index in reversed(indices[:-1]):
            word = cls.commutator(cls.generator(n, index), word)
        return word

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if other.n != self.n:
            raise InvalidParameter("Words live in free groups of different rank")
        return GroupWord(self.n, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sums(self) -> List[int]:
        """Image in the abelianization Z^n"""
        sums = [0] * self.n
        for index, exponent in self.letters:
            sums[index] += exponent
        return sums

    def format(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^-1" for i, e in self.letters)

    def __str__(self) -> str:
        return self.format()


# ==================== Malcev Lie elements ====================

@dataclass
class MalcevElement:
    """Element of the completed free Lie algebra on n generators, modulo brackets longer than r"""
    lie: LieElement

    @classmethod
    def zero(cls, n: int, r: int) -> "MalcevElement":
        return cls(LieElement(malcev_generators(n), r))

    @classmethod
    def generator(cls, n: int, index: int, r: int) -> "MalcevElement":
        return cls(LieElement.generator(malcev_generators(n), index, r))

    @property
    def n(self) -> int:
        return len(self.lie.generators)

    @property
    def r(self) -> int:
        return self.lie.truncation

    @property
    def filtration_order(self) -> Optional[int]:
        """Least bracket length with a nonzero part (None for zero)"""
        return self.lie.filtration_order

    def is_zero(self) -> bool:
        return self.lie.is_zero()

    def part(self, degree: int) -> LieElement:
        return self.lie.homogeneous_part(degree)

    def truncate(self, r: int) -> "MalcevElement":
        return MalcevElement(self.lie.with_truncation(r))

    def __add__(self, other: "MalcevElement") -> "MalcevElement":
        return MalcevElement(self.lie + other.lie)

    def __sub__(self, other: "MalcevElement") -> "MalcevElement":
        return MalcevElement(self.lie - other.lie)

    def __neg__(self) -> "MalcevElement":
        return MalcevElement(-self.lie)

    def scale(self, factor) -> "MalcevElement":
        return MalcevElement(self.lie.scale(factor))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MalcevElement):
            return NotImplemented
        return self.lie == other.lie

    def format(self) -> str:
        return self.lie.format()

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "r": self.r,
            "filtration_order": self.filtration_order,
            "element": self.format(),
            "terms": [
                {"word": [g + 1 for g in word], "coefficient": c}
                for word, c in sorted(self.lie.terms.items(), key=lambda item: (len(item[0]), item[0]))
            ],
        }


@dataclass
class Derivation:
    """
    Derivation of the free Lie algebra fixed by the images of v_1..v_n

    Every image lies in F_2 (brackets of length >= 2), truncated at length r.
    """
    n: int
    r: int
    images: Dict[int, MalcevElement]

    def __post_init__(self):
        for i, image in self.images.items():
            order = image.filtration_order
            if order is not None and order < 2:
                raise DegreeMismatch(f"d(v{i + 1}) has filtration order {order}, expected >= 2")

    def image(self, index: int) -> MalcevElement:
        return self.images.get(index, MalcevElement.zero(self.n, self.r))

    def is_zero(self) -> bool:
        return all(image.is_zero() for image in self.images.values())

    def linking_matrix(self) -> List[List[int]]:
        """
        Degree-1 part of the derivation read off the degree-2 images

        [x_i, sum_j l_ij x_j] has coefficient l_ij on the word x_i x_j.
        """
        matrix = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            image = self.image(i).lie
            for j in range(self.n):
                if j != i:
                    value = image.coefficient((i, j))
                    matrix[i][j] = int(value) if value.denominator == 1 else value
        return matrix

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.n == other.n and all(self.image(i) == other.image(i) for i in range(self.n))

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "r": self.r,
            "images": {f"v{i + 1}": self.image(i).format() for i in range(self.n)},
            "linking_matrix": self.linking_matrix(),
        }


# ==================== Loop-space coalgebra ====================

@dataclass
class LoopCoalgebra:
    """
    H_*(Omega S^m): one basis vector v^j per j >= 0, v primitive of degree m - 1

    For m odd the diagonal is binomial in j. For m even v^2 is primitive as
    well, and the coefficients are binomial in floor(j / 2).
    """
    m: int
    cutoff: int
    diagonals: Dict[int, Dict[Tuple[int, int], int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.m < 2:
            raise InvalidParameter(f"Loop coalgebra needs m >= 2, got {self.m}")
        if self.cutoff < 1:
            raise InvalidParameter(f"Loop coalgebra cutoff must be >= 1, got {self.cutoff}")
        self.diagonals = {j: self._diagonal(j) for j in range(self.cutoff + 1)}

    def _diagonal(self, j: int) -> Dict[Tuple[int, int], int]:
        if self.m % 2:
            return {(i, j - i): comb(j, i) for i in range(j + 1)}
        a = j // 2
        out: Dict[Tuple[int, int], int] = defaultdict(int)
        for b in range(a + 1):
            if j % 2 == 0:
                out[(2 * b, 2 * (a - b))] += comb(a, b)
            else:
                out[(2 * b + 1, 2 * (a - b))] += comb(a, b)
                out[(2 * b, 2 * (a - b) + 1)] += comb(a, b)
        return dict(out)

    def degree(self, j: int) -> int:
        return j * (self.m - 1)

    def diagonal(self, j: int) -> Dict[Tuple[int, int], int]:
        return self.diagonals[j]

    def reduced_diagonal(self, j: int) -> Dict[Tuple[int, int], int]:
        return {(a, b): c for (a, b), c in self.diagonals[j].items() if a and b}

    def counit_holds(self) -> bool:
        return all(
            self.diagonals[j].get((0, j)) == 1 and self.diagonals[j].get((j, 0)) == 1
            for j in range(self.cutoff + 1)
        )

    def coassociativity_holds(self) -> bool:
        for j in range(self.cutoff + 1):
            left: Dict[Tuple[int, int, int], int] = defaultdict(int)
            right: Dict[Tuple[int, int, int], int] = defaultdict(int)
            for (a, b), c in self.diagonals[j].items():
                for (a1, a2), c1 in self.diagonals[a].items():
                    left[(a1, a2, b)] += c * c1
                for (b1, b2), c2 in self.diagonals[b].items():
                    right[(a, b1, b2)] += c * c2
            if dict(left) != dict(right):
                return False
        return True

    def lemma_constants(self) -> Dict[int, Fraction]:
        """c_k = 1/k! for m odd, c_2a = c_2a+1 = 1/a! for m even"""
        if self.m % 2:
            return {k: Fraction(1, factorial(k)) for k in range(1, self.cutoff + 1)}
        return {k: Fraction(1, factorial(k // 2)) for k in range(1, self.cutoff + 1)}

    def to_dict(self) -> Dict:
        return {
            "m": self.m,
            "cutoff": self.cutoff,
            "diagonals": {
                str(j): [{"left": a, "right": b, "coefficient": c} for (a, b), c in sorted(d.items())]
                for j, d in self.diagonals.items()
            },
        }


HomMap = Dict[int, LieVector]


def lie_vector_bracket(lie: LieQuotient, a: LieVector, b: LieVector) -> LieVector:
    out: LieVector = defaultdict(Fraction)
    for ka, ca in a.items():
        for kb, cb in b.items():
            for key, c in lie.bracket(ka, kb).items():
                out[key] += ca * cb * c
    return {k: v for k, v in out.items() if v}


def lie_vector_add(target: LieVector, vector: LieVector, factor=1) -> None:
    for key, c in vector.items():
        target[key] = target.get(key, Fraction(0)) + factor * c


# ==================== Nilpotent Lie data ====================

@dataclass
class NilpotentLieData:
    """
    Finite-dimensional Lie algebra given by a weighted basis and structure constants

    Basis keys are (weight, index). Brackets not listed vanish; the table
    is completed by antisymmetry.
    """
    basis: List[Key]
    brackets: Dict[Tuple[Key, Key], LieVector]
    name: str = ""
    nilpotency_class: int = field(default=0, init=False)

    def __post_init__(self):
        table: Dict[Tuple[Key, Key], LieVector] = {}
        for (a, b), value in self.brackets.items():
            value = {k: Fraction(c) for k, c in value.items() if c}
            if a == b and value:
                raise InvalidParameter(f"[{a}, {a}] must vanish in an ungraded Lie algebra")
            if value:
                table[(a, b)] = value
                table[(b, a)] = {k: -c for k, c in value.items()}
        self.brackets = table
        self.nilpotency_class = self._lower_central_class()

    @classmethod
    def from_quotient(cls, lie: LieQuotient, name: str = "") -> "NilpotentLieData":
        """Structure constants of a truncated graded quotient, weights = degrees"""
        return cls(lie.basis(), lie.structure_constants(), name)

    @classmethod
    def abelian(cls, dim: int) -> "NilpotentLieData":
        return cls([(1, i) for i in range(dim)], {}, "abelian")

    def bracket(self, x: LieVector, y: LieVector) -> LieVector:
        out: LieVector = defaultdict(Fraction)
        for a, ca in x.items():
            for b, cb in y.items():
                for key, c in self.brackets.get((a, b), {}).items():
                    out[key] += ca * cb * c
        return {k: v for k, v in out.items() if v}

    def _lower_central_class(self) -> int:
        """Length of the lower central series; NotNilpotent if it stabilises above zero"""
        current = EchelonBasis([{key: Fraction(1)} for key in self.basis])
        length = 0
        while current.dim:
            nxt = EchelonBasis([
                self.bracket({a: Fraction(1)}, v) for a in self.basis for v in current.vectors()
            ])
            length += 1
            if nxt.dim == current.dim:
                raise NotNilpotent(
                    f"Lower central series of {self.name or 'the Lie algebra'} stabilises at dimension {nxt.dim}"
                )
            current = nxt
        return length

    def filtration_order(self, x: LieVector) -> Optional[int]:
        weights = [key[0] for key, c in x.items() if c]
        return min(weights) if weights else None

    def is_complete_filtration(self) -> bool:
        """[F_1, F_r] lies in F_(r+1)"""
        return all(
            min(k[0] for k in value) >= max(a[0], b[0]) + 1 for (a, b), value in self.brackets.items()
        )

    def is_malcev_filtration(self) -> bool:
        """[F_r, F_s] lies in F_(r+s)"""
        return all(min(k[0] for k in value) >= a[0] + b[0] for (a, b), value in self.brackets.items())

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "dim": len(self.basis),
            "nilpotency_class": self.nilpotency_class,
            "complete_filtration": self.is_complete_filtration(),
            "malcev_filtration": self.is_malcev_filtration(),
        }
