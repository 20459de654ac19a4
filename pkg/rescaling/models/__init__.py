# Models Package
from .power_series import PowerSeries, lcs_product
from .sparse_matrix import SparseMatrix, EchelonBasis, TriangularBasis, QuotientSpace
from .quotient_algebra import QuotientAlgebra
from .tensor import GeneratorSet, TensorElement, LieElement, GradedLieDims, LieQuotient
from .verdict import Verdict, VerdictStatus, RankTable
from .algebra import AlgebraPresentation, RescaledAlgebra, QuadraticDual, HolonomyLie
from .quillen import QuillenModel, QuillenHomology, CEComplex
from .group import GroupWord, MalcevElement, Derivation, LoopCoalgebra, NilpotentLieData
from .geometry import WeightedLinkingGraph, ArrangementKind, ArrangementSpec, LinkCohomology

__all__ = [
    'PowerSeries',
    'lcs_product',
    'SparseMatrix',
    'EchelonBasis',
    'TriangularBasis',
    'QuotientSpace',
    'QuotientAlgebra',
    'GeneratorSet',
    'TensorElement',
    'LieElement',
    'GradedLieDims',
    'LieQuotient',
    'Verdict',
    'VerdictStatus',
    'RankTable',
    'AlgebraPresentation',
    'RescaledAlgebra',
    'QuadraticDual',
    'HolonomyLie',
    'QuillenModel',
    'QuillenHomology',
    'CEComplex',
    'GroupWord',
    'MalcevElement',
    'Derivation',
    'LoopCoalgebra',
    'NilpotentLieData',
    'WeightedLinkingGraph',
    'ArrangementKind',
    'ArrangementSpec',
    'LinkCohomology',
]
