"""
Power Series Model - truncated univariate series with exact rational coefficients
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union

from rescaling.exceptions import InvalidParameter, ZeroConstantTerm

Rational = Fraction
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PowerSeries:
    """
    Truncated formal power series c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))

    Binary operations between series of different orders carry the smaller
    order; nothing beyond the order is ever claimed.
    """
    order: int
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise InvalidParameter(f"Truncation order must be >= 0, got {self.order}")
        if len(self.coefficients) != self.order + 1:
            raise InvalidParameter(
                f"Expected {self.order + 1} coefficients, got {len(self.coefficients)}"
            )

    # ==================== Constructors ====================

    @classmethod
    def of(cls, coefficients: Iterable[Scalar], order: int) -> "PowerSeries":
        """Series from a coefficient list, padded with zeros or cut at `order`"""
        coeffs: List[Fraction] = [Fraction(c) for c in coefficients][: order + 1]
        coeffs.extend([Fraction(0)] * (order + 1 - len(coeffs)))
        return cls(order, tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.of([1], order)

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls.of([], order)

    @classmethod
    def monomial(cls, coefficient: Scalar, degree: int, order: int) -> "PowerSeries":
        coeffs = [0] * (degree + 1)
        coeffs[degree] = coefficient
        return cls.of(coeffs, order)

    @classmethod
    def binomial(cls, coefficient: Scalar, degree: int, order: int) -> "PowerSeries":
        """1 + coefficient * t^degree"""
        return cls.one(order) + cls.monomial(coefficient, degree, order)

    @classmethod
    def binomial_power(cls, coefficient: Scalar, degree: int, exponent: int, order: int) -> "PowerSeries":
        """(1 + coefficient * t^degree)^exponent for any integer exponent"""
        if degree < 1:
            raise InvalidParameter(f"Binomial degree must be >= 1, got {degree}")
        c = Fraction(coefficient)
        coeffs = [Fraction(0)] * (order + 1)
        term = Fraction(1)
        j = 0
        while j * degree <= order:
            coeffs[j * degree] = term * (c ** j)
            term = term * (exponent - j) / (j + 1)
            j += 1
            if term == 0:
                break
        return cls(order, tuple(coeffs))

    # ==================== Access ====================

    def __getitem__(self, degree: int) -> Fraction:
        if degree < 0 or degree > self.order:
            raise IndexError(f"Degree {degree} outside 0..{self.order}")
        return self.coefficients[degree]

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(order, self.coefficients[: order + 1])

    def support(self) -> List[int]:
        return [d for d, c in enumerate(self.coefficients) if c != 0]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def to_pairs(self) -> List[Tuple[int, int]]:
        return [(c.numerator, c.denominator) for c in self.coefficients]

    def first_difference(self, other: "PowerSeries") -> Optional[int]:
        """Lowest degree where the two series differ, within the common order"""
        order = min(self.order, other.order)
        for d in range(order + 1):
            if self.coefficients[d] != other.coefficients[d]:
                return d
        return None

    # ==================== Arithmetic ====================

    def _aligned(self, other: "PowerSeries") -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...], int]:
        order = min(self.order, other.order)
        return self.coefficients[: order + 1], other.coefficients[: order + 1], order

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self + PowerSeries.of([other], self.order)
        a, b, order = self._aligned(other)
        return PowerSeries(order, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.order, tuple(-c for c in self.coefficients))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other: Union["PowerSeries", Scalar]) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            factor = Fraction(other)
            return PowerSeries(self.order, tuple(c * factor for c in self.coefficients))
        a, b, order = self._aligned(other)
        out = [Fraction(0)] * (order + 1)
        nonzero_b = [(j, y) for j, y in enumerate(b) if y != 0]
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in nonzero_b:
                if i + j > order:
                    break
                out[i + j] += x * y
        return PowerSeries(order, tuple(out))

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        """Multiplicative inverse up to truncation; needs a nonzero constant term"""
        a0 = self.coefficients[0]
        if a0 == 0:
            raise ZeroConstantTerm("Constant term is zero; the series has no reciprocal")
        inv0 = 1 / a0
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = sum((self.coefficients[i] * out[n - i] for i in range(1, n + 1)), Fraction(0))
            out.append(-inv0 * acc)
        return PowerSeries(self.order, tuple(out))

    def __truediv__(self, other: Union["PowerSeries", Scalar]) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self * (1 / Fraction(other))
        return self * other.reciprocal()

    def __pow__(self, exponent: int) -> "PowerSeries":
        base = self if exponent >= 0 else self.reciprocal()
        result = PowerSeries.one(self.order)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def substitute(self, sign: int, m: int, order: Optional[int] = None) -> "PowerSeries":
        """
        The series a(sign * t^m)

        Coefficients of a(t^m) are known through degree m*(N+1) - 1 when a is
        known through N; that is the default order of the result.
        """
        if sign not in (1, -1):
            raise InvalidParameter(f"Sign must be +1 or -1, got {sign}")
        if m < 1:
            raise InvalidParameter(f"Substitution exponent must be >= 1, got {m}")
        known = m * (self.order + 1) - 1
        target = known if order is None else min(order, known)
        out = [Fraction(0)] * (target + 1)
        for d, c in enumerate(self.coefficients):
            if d * m > target:
                break
            out[d * m] = c * (sign ** d)
        return PowerSeries(target, tuple(out))

    # ==================== Display ====================

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coefficients):
            if c == 0:
                continue
            coeff = str(c)
            if d == 0:
                terms.append(coeff)
            else:
                power = "t" if d == 1 else f"t^{d}"
                if c == 1:
                    terms.append(power)
                elif c == -1:
                    terms.append(f"-{power}")
                else:
                    terms.append(f"{coeff}{power}" if c.denominator == 1 else f"({coeff}){power}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(t^{self.order + 1})"


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def series_reciprocal(a: PowerSeries) -> PowerSeries:
    return a.reciprocal()


def series_substitute(a: PowerSeries, sign: int, m: int) -> PowerSeries:
    return a.substitute(sign, m)


def lcs_product(ranks: Iterable[Tuple[int, int]], order: int, sign: int = -1) -> PowerSeries:
    """
    Product of (1 + sign * t^degree)^rank over (degree, rank) pairs

    With sign = -1 this is the left-hand side of the LCS formula.
    """
    result = PowerSeries.one(order)
    for degree, rank in ranks:
        if rank and degree <= order:
            result = result * PowerSeries.binomial_power(sign, degree, rank, order)
    return result
