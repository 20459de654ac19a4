"""
Malcev Service - truncated Campbell-Hausdorff calculus, link derivations, loop-sphere brackets
"""
import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from rescaling.config import settings
from rescaling.exceptions import DegreeMismatch, InvalidParameter
from rescaling.models.group import (
    Derivation,
    GroupWord,
    HomMap,
    LieVector,
    LoopCoalgebra,
    MalcevElement,
    NilpotentLieData,
    lie_vector_add,
    lie_vector_bracket,
    malcev_generators,
)
from rescaling.models.tensor import GeneratorSet, LieElement, LieQuotient, TensorElement, Word
from rescaling.services.tensor_lie_service import tensor_lie_service

logger = logging.getLogger(__name__)


@dataclass
class ChInvariant:
    """Raw Campbell-Hausdorff invariant: a derivation representative plus its linking data"""
    derivation: Derivation
    linking_matrix: List[List[int]]
    orbit: str = "unsupported"

    def to_dict(self) -> Dict:
        return {
            "derivation": self.derivation.to_dict(),
            "linking_matrix": self.linking_matrix,
            "orbit_comparison": self.orbit,
        }


@dataclass
class ExpProduct:
    """x . y in the exponential group, with its filtration order"""
    element: LieVector
    filtration_order: Optional[int]

    def to_dict(self) -> Dict:
        return {
            "element": [
                {"weight": key[0], "index": key[1], "coefficient": c} for key, c in sorted(self.element.items())
            ],
            "filtration_order": self.filtration_order,
        }


class MalcevService:
    """
    Campbell-Hausdorff calculus in the truncated tensor algebra

    Features:
    - exp / log of elements without constant term
    - Campbell-Hausdorff products, checked to stay in the Lie span
    - Campbell-Hausdorff representation of free group words
    - Link derivations d(v_i) = [x_i, rho(l_i)] and linking matrices
    - Exponential groups of finite nilpotent Lie data
    - Hom(C_+, E) brackets for loop spheres and the c_k isomorphism check
    """

    def __init__(self):
        self._bch_cache: Dict[int, LieElement] = {}

    # ==================== exp / log ====================

    def exp(self, element: TensorElement) -> TensorElement:
        """sum_k x^k / k! through the truncation degree"""
        if element.coefficient(()):
            raise InvalidParameter("exp is taken of elements without constant term")
        gens, top = element.generators, element.truncation
        result = TensorElement.one(gens, top)
        power = TensorElement.one(gens, top)
        for k in range(1, top + 1):
            power = power.product(element).scale(Fraction(1, k))
            if power.is_zero():
                break
            result = result + power
        return result

    def log(self, element: TensorElement) -> TensorElement:
        """sum_k (-1)^(k+1) u^k / k with u = element - 1"""
        if element.coefficient(()) != 1:
            raise InvalidParameter("log is taken of elements with constant term 1")
        gens, top = element.generators, element.truncation
        u = element - TensorElement.one(gens, top)
        result = TensorElement.zero(gens, top)
        power = TensorElement.one(gens, top)
        for k in range(1, top + 1):
            power = power.product(u)
            if power.is_zero():
                break
            result = result + power.scale(Fraction((-1) ** (k + 1), k))
        return result

    def _to_malcev(self, element: TensorElement) -> MalcevElement:
        return MalcevElement(tensor_lie_service.ensure_lie(element))

    # ==================== Campbell-Hausdorff ====================

    def bch(self, x: MalcevElement, y: MalcevElement, r: Optional[int] = None) -> MalcevElement:
        """
        log(exp(x) exp(y)) modulo brackets longer than r

        Args:
            x, y: Malcev elements over the same generators
            r: Truncation (defaults to the smaller of the two)

        Returns:
            The Campbell-Hausdorff product as a Lie element

        Raises:
            NotPrimitive: the logarithm left the Lie span
        """
        top = min(x.r, y.r) if r is None else r
        a, b = x.lie.with_truncation(top), y.lie.with_truncation(top)
        product = self.exp(a).product(self.exp(b))
        return self._to_malcev(self.log(product))

    def ch_representation(self, word: GroupWord, r: int) -> MalcevElement:
        """
        rho(w) for the homomorphism rho(x_i) = x_i from F_n to exp of the completed free Lie algebra

        The letters are folded left to right as group-like elements
        exp(+-x_i), then one logarithm is taken.
        """
        if r < 1:
            raise InvalidParameter(f"Truncation r must be >= 1, got {r}")
        gens = malcev_generators(word.n)
        group_like = TensorElement.one(gens, r)
        cache: Dict[Tuple[int, int], TensorElement] = {}
        for letter in word.letters:
            if letter not in cache:
                index, exponent = letter
                cache[letter] = self.exp(TensorElement(gens, r, {(index,): exponent}))
            group_like = group_like.product(cache[letter])
        result = self._to_malcev(self.log(group_like))
        logger.debug(f"rho({word.format()}) has filtration order {result.filtration_order}")
        return result

    # ==================== Links ====================

    def link_derivation(self, longitudes: Sequence[GroupWord], r: int) -> Derivation:
        """
        d(v_i) = [x_i, rho(l_i)] modulo brackets longer than r

        Args:
            longitudes: One word l_i per link component, all in F_n
            r: Bracket-length truncation

        Returns:
            Derivation; its degree-2 images carry the linking numbers
        """
        n = len(longitudes)
        if r < 2:
            raise InvalidParameter(f"Link derivations need r >= 2, got {r}")
        for i, word in enumerate(longitudes):
            if word.n != n:
                raise InvalidParameter(f"Longitude l{i + 1} lives in F_{word.n}, expected F_{n}")
        gens = malcev_generators(n)
        images = {}
        for i, word in enumerate(longitudes):
            rho = self.ch_representation(word, r - 1).lie.with_truncation(r)
            image = LieElement.generator(gens, i, r).bracket(rho, truncate=True)
            images[i] = MalcevElement(image)
        derivation = Derivation(n, r, images)
        logger.info(f"Link derivation on {n} components at r={r}: linking matrix {derivation.linking_matrix()}")
        return derivation

    def ch_invariant_raw(self, longitudes: Sequence[GroupWord], r: int) -> ChInvariant:
        """Representative of the order-r invariant; the orbit under automorphisms is not computed"""
        derivation = self.link_derivation(longitudes, r)
        return ChInvariant(derivation, derivation.linking_matrix())

    def word_linking_matrix(self, longitudes: Sequence[GroupWord]) -> List[List[int]]:
        """l_ij as the exponent sum of x_j in l_i"""
        n = len(longitudes)
        matrix = []
        for i, word in enumerate(longitudes):
            sums = word.exponent_sums()
            matrix.append([0 if j == i else sums[j] for j in range(n)])
        return matrix

    def compare_invariants(self, first: ChInvariant, second: ChInvariant) -> Dict:
        return {
            "raw_derivations_differ": first.derivation != second.derivation,
            "linking_matrices_agree": first.linking_matrix == second.linking_matrix,
            "orbit_comparison": "unsupported",
        }

    def hopf_longitudes(self, n: int) -> List[GroupWord]:
        """l_i = product of the other meridians, in increasing order"""
        if n < 1:
            raise InvalidParameter(f"A link needs n >= 1 components, got {n}")
        return [
            GroupWord(n, tuple((j, 1) for j in range(n) if j != i)) for i in range(n)
        ]

    def twisted_longitudes(self, n: int, commutator: GroupWord, component: int = 0) -> List[GroupWord]:
        """Hopf longitudes with l_component multiplied by a commutator word"""
        if not 0 <= component < n:
            raise InvalidParameter(f"Component {component + 1} outside a {n}-component link")
        longitudes = self.hopf_longitudes(n)
        longitudes[component] = longitudes[component] * commutator
        return longitudes

    # ==================== Exponential groups ====================

    def _universal_bch(self, order: int) -> LieElement:
        """Campbell-Hausdorff series of two letters X, Y through bracket length `order`"""
        if order not in self._bch_cache:
            x = MalcevElement.generator(2, 0, order)
            y = MalcevElement.generator(2, 1, order)
            self._bch_cache[order] = self.bch(x, y).lie
        return self._bch_cache[order]

    def _evaluate(self, data: NilpotentLieData, element: LieElement, values: Sequence[LieVector]) -> LieVector:
        """
        Evaluate a Lie element of the free algebra in `data`

        A homogeneous Lie polynomial P of length d equals (1/d) sum_w c_w [x_w1, [x_w2, ... x_wd]].
        """
        cache: Dict[Word, LieVector] = {}

        def right_normed(word: Word) -> LieVector:
            if word not in cache:
                if len(word) == 1:
                    cache[word] = dict(values[word[0]])
                else:
                    cache[word] = data.bracket(values[word[0]], right_normed(word[1:]))
            return cache[word]

        out: LieVector = {}
        for word, c in element.terms.items():
            if len(word) > data.nilpotency_class:
                continue
            lie_vector_add(out, right_normed(word), c / len(word))
        return {k: v for k, v in out.items() if v}

    def exp_group(self, data: NilpotentLieData, x: LieVector, y: LieVector) -> ExpProduct:
        """
        Group law x . y = x + y + 1/2 [x, y] + ... of the exponential group

        The series stops at the nilpotency class of `data`.
        """
        order = max(data.nilpotency_class, 1)
        product = self._evaluate(data, self._universal_bch(order), [x, y])
        return ExpProduct(product, data.filtration_order(product))

    def exp_inverse(self, x: LieVector) -> LieVector:
        return {k: -c for k, c in x.items()}

    def nilpotent_from_quotient(self, lie: LieQuotient, name: str = "") -> NilpotentLieData:
        return NilpotentLieData.from_quotient(lie, name)

    def free_nilpotent(self, n: int, nilpotency_class: int) -> NilpotentLieData:
        gens = malcev_generators(n)
        lie = tensor_lie_service.quotient_lie_algebra(gens, [], nilpotency_class)
        return NilpotentLieData.from_quotient(lie, f"free nilpotent (n={n}, class {nilpotency_class})")

    # ==================== Loop-sphere brackets ====================

    def _check_hom_map(self, coalgebra: LoopCoalgebra, f: HomMap) -> None:
        for k, value in f.items():
            if not 1 <= k <= coalgebra.cutoff:
                raise DegreeMismatch(f"v^{k} outside the stored range 1..{coalgebra.cutoff}")
            for key in value:
                if key[0] != coalgebra.degree(k):
                    raise DegreeMismatch(
                        f"f(v^{k}) has a component in degree {key[0]}, expected {coalgebra.degree(k)}"
                    )

    def hom_lie_bracket(self, coalgebra: LoopCoalgebra, lie: LieQuotient, f: HomMap, g: HomMap) -> HomMap:
        """
        [f, g] = b o (f (x) g) o reduced diagonal, on v^1 .. v^cutoff

        Args:
            coalgebra: H_*(Omega S^m) up to its cutoff
            lie: E, a truncated graded Lie algebra
            f, g: Degree-0 maps, v^k -> element of E in degree k(m - 1)
        """
        self._check_hom_map(coalgebra, f)
        self._check_hom_map(coalgebra, g)
        out: HomMap = {}
        for j in range(2, coalgebra.cutoff + 1):
            value: LieVector = {}
            for (a, b), c in coalgebra.reduced_diagonal(j).items():
                if a in f and b in g:
                    lie_vector_add(value, lie_vector_bracket(lie, f[a], g[b]), c)
            value = {k: v for k, v in value.items() if v}
            if value:
                out[j] = value
        return out

    def rebracket(self, m: int, lie: LieQuotient, s: HomMap, t: HomMap, cutoff: int) -> HomMap:
        """Bracket of E{m}: the usual one, except that two odd-degree elements commute"""
        out: HomMap = {}
        for j in range(2, cutoff + 1):
            value: LieVector = {}
            for i in range(1, j):
                if i not in s or j - i not in t:
                    continue
                if (i * (m - 1)) % 2 and ((j - i) * (m - 1)) % 2:
                    continue
                lie_vector_add(value, lie_vector_bracket(lie, s[i], t[j - i]))
            value = {k: v for k, v in value.items() if v}
            if value:
                out[j] = value
        return out

    def series_of(self, f: HomMap, constants: Mapping[int, Fraction]) -> HomMap:
        """f -> sum_k c_k f(v^k), kept degreewise"""
        return {k: {key: constants[k] * c for key, c in value.items()} for k, value in f.items() if value}

    def lemma_exp3_mismatch(
        self,
        coalgebra: LoopCoalgebra,
        lie: LieQuotient,
        samples: Sequence[HomMap],
        constants: Optional[Mapping[int, Fraction]] = None,
    ) -> Optional[int]:
        """First k where phi([f, g]) and [phi f, phi g] differ on v^k over all sample pairs"""
        constants = coalgebra.lemma_constants() if constants is None else constants
        first: Optional[int] = None
        for f in samples:
            for g in samples:
                left = self.series_of(self.hom_lie_bracket(coalgebra, lie, f, g), constants)
                right = self.rebracket(
                    coalgebra.m, lie, self.series_of(f, constants), self.series_of(g, constants), coalgebra.cutoff
                )
                for k in range(1, coalgebra.cutoff + 1):
                    if left.get(k, {}) != right.get(k, {}):
                        first = k if first is None else min(first, k)
                        break
        return first

    def verify_lemma_exp3(
        self,
        coalgebra: LoopCoalgebra,
        lie: LieQuotient,
        samples: Sequence[HomMap],
        constants: Optional[Mapping[int, Fraction]] = None,
    ) -> bool:
        """Does f -> sum_k c_k f(v^k) carry the Hom bracket to the bracket of E{m} on the samples?"""
        mismatch = self.lemma_exp3_mismatch(coalgebra, lie, samples, constants)
        if mismatch is not None:
            logger.info(f"c_k isomorphism fails on v^{mismatch} (m={coalgebra.m})")
        return mismatch is None

    def random_hom_maps(
        self, coalgebra: LoopCoalgebra, lie: LieQuotient, count: int, seed: Optional[int] = None
    ) -> List[HomMap]:
        """Sample maps with small integer coefficients on every basis element of E{m}"""
        rng = random.Random(settings.DEFAULT_RANDOM_SEED if seed is None else seed)
        by_degree: Dict[int, List] = defaultdict(list)
        for key in lie.basis():
            by_degree[key[0]].append(key)
        maps = []
        for _ in range(count):
            f: HomMap = {}
            for k in range(1, coalgebra.cutoff + 1):
                value = {key: Fraction(rng.randint(-3, 3)) for key in by_degree.get(coalgebra.degree(k), [])}
                value = {key: c for key, c in value.items() if c}
                if value:
                    f[k] = value
            maps.append(f)
        return maps

    def sample_lie_algebra(self, n: int, degree: int, truncation: int, abelian: bool = False) -> LieQuotient:
        """Free (or abelian) Lie algebra on n generators of one degree, truncated"""
        gens = GeneratorSet.uniform(n, degree, prefix="e", signed=True)
        relations = []
        if abelian:
            for i in range(n):
                for j in range(i, n):
                    x = LieElement.generator(gens, i, truncation)
                    y = LieElement.generator(gens, j, truncation)
                    relations.append(x.bracket(y, truncate=True))
        return tensor_lie_service.quotient_lie_algebra(gens, relations, truncation)


malcev_service = MalcevService()
