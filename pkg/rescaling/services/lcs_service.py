"""
LCS Service - rank extraction, homotopy ranks, loop-space and PBW series, rebracketing
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from sympy import divisors
from sympy.functions.combinatorial.numbers import mobius

from rescaling.exceptions import InvalidParameter, NegativeRank, NonIntegralRank, OddDegreeUnsupported
from rescaling.models.algebra import AlgebraPresentation
from rescaling.models.power_series import PowerSeries, lcs_product
from rescaling.models.tensor import GradedLieDims
from rescaling.models.verdict import RankTable
from rescaling.services.algebra_service import algebra_service
from rescaling.services.tensor_lie_service import tensor_lie_service

logger = logging.getLogger(__name__)


@dataclass
class Rebracketing:
    """E{m}: degree r carries E_{r(m-1)}; other degrees of E are dropped"""
    dims: GradedLieDims
    m: int
    dropped: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"m": self.m, "dims": self.dims.as_list(), "dropped_degrees": self.dropped}


class LCSService:
    """
    Hilbert-series identities of lower central series type

    Features:
    - Rank extraction from prod (1 - t^n)^phi_n = P(-t)
    - Homotopy ranks of rescaled spaces and their product identity
    - Loop-space Poincare series P_X(-t^2k)^-1
    - PBW series of evenly graded Lie algebras
    - Series-level rebracketing E{m}
    - Moebius-inversion oracle for the extraction
    """

    def extract_ranks(self, series: PowerSeries, truncation: Optional[int] = None) -> RankTable:
        """
        The integers phi_n with prod_{n <= N} (1 - t^n)^phi_n = P(-t) mod t^(N+1)

        The degree-n coefficient of the partial product over n' < n fixes
        phi_n, so no fractional intermediates appear.

        Raises:
            NonIntegralRank: some phi_n is not an integer
            NegativeRank: some phi_n is negative
        """
        top = series.order if truncation is None else min(truncation, series.order)
        if series[0] != 1:
            raise InvalidParameter(f"Rank extraction needs P(0) = 1, got {series[0]}")
        target = series.truncate(top).substitute(-1, 1)
        current = PowerSeries.one(top)
        ranks: Dict[int, int] = {}
        for n in range(1, top + 1):
            phi = current[n] - target[n]
            if phi.denominator != 1:
                raise NonIntegralRank(f"phi_{n} = {phi} is not an integer")
            if phi < 0:
                raise NegativeRank(f"phi_{n} = {phi} is negative")
            ranks[n] = int(phi)
            if phi:
                current = current * PowerSeries.binomial_power(-1, n, int(phi), top)
        logger.debug(f"Extracted ranks {[ranks[n] for n in sorted(ranks)]}")
        return RankTable(ranks, top, "lcs", series)

    def extract_ranks_mobius(self, series: PowerSeries, truncation: Optional[int] = None) -> Dict[int, Fraction]:
        """
        Independent oracle: phi_n = (1/n) sum_{d | n} mu(n/d) p_d,
        where -log P(-t) = sum_d p_d t^d / d and p_d = sum_{n | d} n phi_n

        Returns possibly non-integral values without raising.
        """
        top = series.order if truncation is None else min(truncation, series.order)
        target = series.truncate(top).substitute(-1, 1)
        # Power sums p_d with -log P(-t) = sum_d p_d t^d / d, from Newton's identities
        power_sums: Dict[int, Fraction] = {}
        for d in range(1, top + 1):
            acc = -d * target[d]
            for i in range(1, d):
                acc -= target[i] * power_sums[d - i]
            power_sums[d] = acc
        return {
            n: sum((Fraction(int(mobius(n // d))) * power_sums[d] for d in divisors(n)), Fraction(0)) / n
            for n in range(1, top + 1)
        }

    def homotopy_ranks(self, series: PowerSeries, k: int, truncation: int) -> RankTable:
        """Phi_{2kr} = phi_r of P_X; Phi_n = 0 when 2k does not divide n"""
        if k < 1:
            raise InvalidParameter(f"Rescaling parameter k must be >= 1, got {k}")
        lcs = self.extract_ranks(series, min(series.order, truncation // (2 * k)))
        ranks = {2 * k * r: phi for r, phi in lcs.ranks.items()}
        return RankTable(ranks, truncation, "homotopy", series)

    def homotopy_product(self, ranks: RankTable, k: int, order: int) -> PowerSeries:
        """prod_r (1 - t^((2k+1) r))^Phi_{2kr}, which equals P_Y(-t) for Y = X rescaled"""
        pairs = ((n // (2 * k) * (2 * k + 1), phi) for n, phi in ranks.ranks.items())
        return lcs_product(pairs, order)

    def loop_poincare(self, series: PowerSeries, k: int, truncation: int) -> PowerSeries:
        """P_{Omega Y}(t) = P_X(-t^2k)^-1"""
        if k < 1:
            raise InvalidParameter(f"Rescaling parameter k must be >= 1, got {k}")
        return series.substitute(-1, 2 * k, truncation).reciprocal()

    def pbw_series(self, dims: GradedLieDims, truncation: int) -> PowerSeries:
        """prod_d (1 - t^d)^(-dim L_d), the Hilbert series of U(L)"""
        odd = [d for d in dims.support() if d % 2]
        if odd:
            raise OddDegreeUnsupported(f"PBW series needs an evenly graded Lie algebra, odd degrees {odd}")
        return lcs_product(((d, -n) for d, n in dims.dims.items()), truncation)

    def pbw_check(self, algebra: AlgebraPresentation, k: int, loop: PowerSeries) -> Dict:
        """
        pbw_series(H(A)[k]) against the loop series of the k-rescaled space

        Holonomy dims are computed up to HOLONOMY_MAX_WEIGHT, so agreement
        is claimed below degree 2k (weight + 1) only; `complete` says
        whether that reaches the order of the loop series.
        """
        step = 2 * k
        weight = algebra_service.default_holonomy_weight(max(loop.order // step, 1))
        holonomy = algebra_service.holonomy_lie(algebra, weight)
        weight = holonomy.dims.truncation
        checked = min(loop.order, step * (weight + 1) - 1)
        pbw = self.pbw_series(tensor_lie_service.rescale_lie_dims(holonomy.dims, k), checked)
        if checked < loop.order:
            logger.warning(f"PBW comparison for {algebra.name} stops at degree {checked} of {loop.order}")
        return {
            "series": pbw,
            "holonomy_weight": weight,
            "checked_degree": checked,
            "complete": checked == loop.order,
            "matches": pbw == loop.truncate(checked),
            "identity": "eq:pbw",
        }

    def rebracket_dims(self, dims: GradedLieDims, m: int) -> Rebracketing:
        if m < 2:
            raise InvalidParameter(f"Rebracketing needs m >= 2, got {m}")
        step = m - 1
        regraded = {d // step: n for d, n in dims.dims.items() if d % step == 0}
        dropped = [d for d in dims.support() if d % step]
        if dropped:
            logger.info(f"Rebracketing E{{{m}}} drops degrees {dropped}")
        return Rebracketing(GradedLieDims(regraded, dims.truncation // step), m, dropped)


lcs_service = LCSService()
