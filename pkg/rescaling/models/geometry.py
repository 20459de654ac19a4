"""
Geometry Models - weighted linking graphs of links and arrangement classes
"""
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from rescaling.exceptions import InvalidParameter
from rescaling.models.algebra import AlgebraPresentation
from rescaling.models.power_series import PowerSeries
from rescaling.models.verdict import RankTable, Verdict


@dataclass(frozen=True)
class WeightedLinkingGraph:
    """
    Linking numbers l_ij = l_ji of an n-component link

    Stored once per pair i < j (0-based); the diagonal is zero.
    """
    n: int
    weights: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter(f"A link needs n >= 1 components, got {self.n}")
        normalized: Dict[Tuple[int, int], int] = {}
        for (i, j), w in self.weights.items():
            if i == j:
                if w:
                    raise InvalidParameter(f"Linking graph diagonal must vanish, got l_{i + 1}{i + 1} = {w}")
                continue
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InvalidParameter(f"Pair ({i + 1}, {j + 1}) outside a {self.n}-component link")
            key = (min(i, j), max(i, j))
            if key in normalized and normalized[key] != w:
                raise InvalidParameter(f"Linking numbers must be symmetric: l_{i + 1}{j + 1} disagrees")
            normalized[key] = int(w)
        object.__setattr__(self, "weights", {k: w for k, w in normalized.items() if w})

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "WeightedLinkingGraph":
        n = len(matrix)
        weights = {}
        for i in range(n):
            if len(matrix[i]) != n:
                raise InvalidParameter("Linking matrix must be square")
            for j in range(n):
                if matrix[i][j] != matrix[j][i]:
                    raise InvalidParameter(f"Linking matrix is not symmetric at ({i + 1}, {j + 1})")
                if i != j:
                    weights[(i, j)] = matrix[i][j]
                elif matrix[i][i]:
                    raise InvalidParameter("Linking matrix diagonal must vanish")
        return cls(n, weights)

    @classmethod
    def complete(cls, n: int, weight: int = 1) -> "WeightedLinkingGraph":
        return cls(n, {(i, j): weight for i in range(n) for j in range(i + 1, n)})

    def weight(self, i: int, j: int) -> int:
        if i == j:
            return 0
        return self.weights.get((min(i, j), max(i, j)), 0)

    def matrix(self) -> List[List[int]]:
        return [[self.weight(i, j) for j in range(self.n)] for i in range(self.n)]

    def is_complete(self) -> bool:
        return len(self.weights) == self.n * (self.n - 1) // 2

    def to_graph(self) -> nx.Graph:
        """Vertices are components, edges join components with nonzero linking number"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_weighted_edges_from((i, j, w) for (i, j), w in self.weights.items())
        return graph

    def to_dict(self) -> Dict:
        return {"n": self.n, "weights": self.matrix()}


class ArrangementKind(str, Enum):
    """Arrangement classes described by numeric data only"""
    SUPERSOLVABLE = "supersolvable"
    GENERIC = "generic"
    BOOLEAN = "boolean"


@dataclass(frozen=True)
class ArrangementSpec:
    kind: ArrangementKind
    exponents: Tuple[int, ...] = ()
    n: Optional[int] = None
    ell: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ArrangementKind(self.kind))
        object.__setattr__(self, "exponents", tuple(int(d) for d in self.exponents))
        if self.kind == ArrangementKind.SUPERSOLVABLE:
            if not self.exponents or any(d < 1 for d in self.exponents):
                raise InvalidParameter(f"Exponents must be positive, got {list(self.exponents)}")
        elif self.kind == ArrangementKind.GENERIC:
            if self.n is None or self.ell is None or not self.n > self.ell >= 1:
                raise InvalidParameter(f"Generic arrangements need n > ell >= 1, got n={self.n}, ell={self.ell}")
        elif self.n is None or self.n < 1:
            raise InvalidParameter(f"Boolean arrangements need n >= 1, got {self.n}")

    @property
    def factor_exponents(self) -> Tuple[int, ...]:
        """d_i with P(t) = prod (1 + d_i t); empty for generic arrangements"""
        if self.kind == ArrangementKind.BOOLEAN:
            return (1,) * self.n
        return self.exponents

    @property
    def name(self) -> str:
        if self.kind == ArrangementKind.GENERIC:
            return f"generic-n{self.n}-l{self.ell}"
        if self.kind == ArrangementKind.BOOLEAN:
            return f"boolean-n{self.n}"
        return "supersolvable-" + "-".join(str(d) for d in self.exponents)

    def poincare(self, order: int) -> PowerSeries:
        if self.kind == ArrangementKind.GENERIC:
            return PowerSeries.of([comb(self.n, q) for q in range(self.ell + 1)], order)
        return self._factored(order)

    def _factored(self, order: int) -> PowerSeries:
        result = PowerSeries.one(order)
        for d in self.factor_exponents:
            result = result * PowerSeries.binomial(d, 1, order)
        return result

    def algebra(self) -> Optional[AlgebraPresentation]:
        """Orlik-Solomon presentation when it is determined by the class data"""
        if self.kind == ArrangementKind.GENERIC:
            return AlgebraPresentation.generic(self.n, self.ell)
        if self.kind == ArrangementKind.BOOLEAN:
            return AlgebraPresentation.torus(self.n, name=self.name)
        return None

    def to_dict(self) -> Dict:
        return {"kind": self.kind.value, "exponents": list(self.exponents), "n": self.n, "ell": self.ell}


@dataclass
class LinkCohomology:
    """
    Cohomology ring of a link complement, classes a_i in degree p and b_ij in degree 2p

    The b-classes are written b_ij = u_j - u_i with u_1 = 0, which solves
    b_ij + b_jk + b_ki = 0 and b_ij + b_ji = 0.
    """
    graph: WeightedLinkingGraph
    p: int
    products: Dict[Tuple[int, int], Dict[int, int]]
    hilbert: PowerSeries
    presentation: Optional[AlgebraPresentation] = None
    degree_one_generated: bool = True

    def to_dict(self) -> Dict:
        return {
            "n": self.graph.n,
            "p": self.p,
            "products": [
                {"i": i + 1, "j": j + 1, "b": {f"u{a + 2}": c for a, c in sorted(image.items())}}
                for (i, j), image in sorted(self.products.items())
            ],
            "hilbert": self.hilbert,
            "degree_one_generated": self.degree_one_generated,
            "presentation": self.presentation.to_dict() if self.presentation else None,
        }


@dataclass
class LinkReport:
    graph: WeightedLinkingGraph
    k: int
    truncation: int
    connected: bool
    cohomology: LinkCohomology
    holonomy_dims: List[int]
    lcs_ranks: Optional[RankTable]
    homotopy_ranks: Optional[RankTable]
    homotopy_product: Optional[PowerSeries]
    loop_poincare: PowerSeries
    verdict: Verdict
    checks: Dict[str, Any] = field(default_factory=dict)
    coformal: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {
            "graph": self.graph.to_dict(),
            "k": self.k,
            "truncation": self.truncation,
            "connected": self.connected,
            "cohomology": self.cohomology.to_dict(),
            "holonomy_dims": self.holonomy_dims,
            "lcs_ranks": self.lcs_ranks.to_dict() if self.lcs_ranks else None,
            "homotopy_ranks": self.homotopy_ranks.to_dict() if self.homotopy_ranks else None,
            "homotopy_product": self.homotopy_product,
            "loop_poincare": self.loop_poincare,
            "verdict": self.verdict.to_dict(),
            "checks": self.checks,
            "coformal": self.coformal,
        }


@dataclass
class ArrangementReport:
    spec: ArrangementSpec
    k: int
    truncation: int
    poincare: PowerSeries
    homotopy_ranks: Optional[RankTable]
    homotopy_product: Optional[PowerSeries]
    loop_poincare: PowerSeries
    verdict: Verdict
    checks: Dict[str, Any] = field(default_factory=dict)
    candidates: Dict[str, Any] = field(default_factory=dict)
    coformal: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {
            "arrangement": self.spec.to_dict(),
            "k": self.k,
            "truncation": self.truncation,
            "poincare": self.poincare,
            "homotopy_ranks": self.homotopy_ranks.to_dict() if self.homotopy_ranks else None,
            "homotopy_product": self.homotopy_product,
            "loop_poincare": self.loop_poincare,
            "verdict": self.verdict.to_dict(),
            "checks": self.checks,
            "loop_candidates": self.candidates,
            "coformal": self.coformal,
        }
