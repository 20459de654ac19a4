"""
Quillen Models - quadratic Quillen models and Chevalley-Eilenberg complexes

Sign convention for the quadratic differential: with z_a the generator dual
to the normal basis element b_a of B = A[k] (degree |b_a| = q(2k+1), so z_a
sits in degree |b_a| - 1),

    d z_a = 1/2 sum_{b, c} (-1)^{|b_b|} mu^a_{b c} [z_b, z_c]

where b_b b_c = sum_a mu^a_{b c} b_a in B. It is extended to the free Lie
algebra as a degree -1 derivation with Koszul signs.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from rescaling.exceptions import DifferentialNotSquareZero
from rescaling.models.sparse_matrix import rank_of_vectors
from rescaling.models.tensor import GeneratorSet, GradedLieDims, Key, LieElement, LieQuotient, Word, apply_derivation

logger = logging.getLogger(__name__)


@dataclass
class QuillenModel:
    """Free graded Lie algebra on s^-1 of the dual of B-bar with quadratic differential"""
    algebra_name: str
    k: int
    generators: GeneratorSet
    labels: List[Tuple[int, int]]
    differential: Dict[int, Dict[Word, Fraction]]
    truncation: int

    def image(self, index: int) -> LieElement:
        return LieElement(self.generators, self.truncation + 1, self.differential.get(index, {}))

    def apply(self, vector) -> Dict[Word, Fraction]:
        """The differential on a tensor vector (derivation with Koszul signs)"""
        return apply_derivation(self.generators, self.differential, vector)

    def check_square_zero(self) -> None:
        for g, image in self.differential.items():
            if self.apply(image):
                raise DifferentialNotSquareZero(
                    f"d(d({self.generators.names[g]})) != 0 in the Quillen model of {self.algebra_name}"
                )

    def to_dict(self) -> Dict:
        gens = self.generators
        return {
            "algebra": self.algebra_name,
            "k": self.k,
            "generators": [{"name": name, "degree": d} for name, d in zip(gens.names, gens.degrees)],
            "differential": {
                gens.names[g]: LieElement(gens, self.truncation + 1, image).format()
                for g, image in sorted(self.differential.items())
            },
        }


@dataclass
class QuillenHomology:
    """H_* of a Quillen model by homotopy degree, and by (degree, bracket length)"""
    dims: GradedLieDims
    bigraded: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "dims": self.dims.as_list(),
            "bigraded": [
                {"degree": d, "length": ell, "dim": n} for (d, ell), n in sorted(self.bigraded.items()) if n
            ],
        }


Chain = Tuple[Key, ...]


@dataclass
class CEComplex:
    """
    Chevalley-Eilenberg chains (Lambda^p H, d) of a weight-graded Lie algebra

        d(x_1 ^ ... ^ x_p) = sum_{i<j} (-1)^{i+j} [x_i, x_j] ^ x_1 ^ ..^.. ^ x_p

    Weights are additive and preserved by d. The homology in weight w only
    involves H in weights <= w, so it is exact for w <= the Lie truncation.
    Cochain cohomology has the same bigraded dimensions.
    """
    lie: LieQuotient
    max_upper: int
    max_weight: int
    _brackets: Dict[Tuple[Key, Key], Dict[Key, Fraction]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.max_weight = min(self.max_weight, self.lie.truncation)
        self._keys = [key for key in self.lie.basis() if key[0] <= self.max_weight]

    def bracket(self, a: Key, b: Key) -> Dict[Key, Fraction]:
        if (a, b) not in self._brackets:
            self._brackets[(a, b)] = self.lie.bracket(a, b)
        return self._brackets[(a, b)]

    def chains(self, p: int, weight: int) -> List[Chain]:
        """Sorted p-element subsets of the basis with total weight `weight`"""
        if p == 0:
            return [()] if weight == 0 else []
        out = []

        def extend(start: int, chosen: List[Key], remaining: int):
            if len(chosen) == p:
                if remaining == 0:
                    out.append(tuple(chosen))
                return
            for idx in range(start, len(self._keys)):
                key = self._keys[idx]
                if key[0] > remaining:
                    break
                chosen.append(key)
                extend(idx + 1, chosen, remaining - key[0])
                chosen.pop()

        extend(0, [], weight)
        return out

    def boundary(self, chain: Chain) -> Dict[Chain, Fraction]:
        out: Dict[Chain, Fraction] = defaultdict(Fraction)
        for i, j in combinations(range(len(chain)), 2):
            sign = -1 if (i + j) % 2 else 1
            rest = chain[:i] + chain[i + 1:j] + chain[j + 1:]
            for key, c in self.bracket(chain[i], chain[j]).items():
                if key in rest:
                    continue
                position = sum(1 for r in rest if r < key)
                merged = rest[:position] + (key,) + rest[position:]
                out[merged] += (-1 if position % 2 else 1) * sign * c
        return {ch: v for ch, v in out.items() if v}

    def boundary_rank(self, p: int, weight: int) -> int:
        if p <= 1:
            return 0
        return rank_of_vectors([self.boundary(chain) for chain in self.chains(p, weight)])

    def square_zero_holds(self, p: int, weight: int) -> bool:
        for chain in self.chains(p, weight):
            total: Dict[Chain, Fraction] = defaultdict(Fraction)
            for face, c in self.boundary(chain).items():
                for face2, c2 in self.boundary(face).items():
                    total[face2] += c * c2
            if any(total.values()):
                return False
        return True

    def homology_dims(self) -> Dict[Tuple[int, int], int]:
        """dim H_{p, w} for p <= max_upper and w <= max_weight"""
        ranks: Dict[Tuple[int, int], int] = {}

        def rank(p: int, w: int) -> int:
            if (p, w) not in ranks:
                ranks[(p, w)] = self.boundary_rank(p, w)
            return ranks[(p, w)]

        dims = {}
        for w in range(0, self.max_weight + 1):
            for p in range(0, min(self.max_upper, w) + 1):
                size = len(self.chains(p, w))
                dims[(p, w)] = size - rank(p, w) - rank(p + 1, w)
                logger.debug(f"CE homology p={p} w={w}: {dims[(p, w)]}")
        return dims


def first_ce_failure(
    dims: Dict[Tuple[int, int], int], algebra_dims: Dict[int, int]
) -> Optional[Tuple[int, int, int, int]]:
    """First (p, w, found, expected) off the pattern H_{p,w} = A^p if w = p else 0"""
    for (p, w), value in sorted(dims.items(), key=lambda item: (item[0][1], item[0][0])):
        expected = algebra_dims.get(p, 0) if p == w else 0
        if value != expected:
            return p, w, value, expected
    return None
