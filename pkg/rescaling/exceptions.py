"""
Exceptions - error hierarchy shared by the library and the CLI

Mathematical errors map to CLI exit code 3, schema errors to exit code 2.
"""


class RescalingError(Exception):
    """Root of every error raised by the toolkit"""

    @property
    def error_name(self) -> str:
        return type(self).__name__


class SchemaError(RescalingError):
    """Malformed problem description (JSON or schema validation)"""


class MathematicalError(RescalingError, ValueError):
    """An operation was asked something that has no exact answer"""


class InvalidParameter(MathematicalError):
    """Parameter outside its admissible range (k = 0, m < 2, ...)"""


class ZeroConstantTerm(MathematicalError):
    """Reciprocal of a power series whose constant term vanishes"""


class TruncationOverflow(MathematicalError):
    """A Lie bracket would exceed the truncation degree"""


class UnsupportedSignedCase(MathematicalError):
    """Lyndon counting requested for a signed (odd / mixed degree) generator set"""


class DegreeMismatch(MathematicalError):
    """Element or map of the wrong degree"""


class QuadraticRequired(MathematicalError):
    """Operation defined only for quadratic algebras"""


class DifferentialNotSquareZero(MathematicalError):
    """A differential failed the d o d = 0 check"""


class NonIntegralRank(MathematicalError):
    """Rank extraction produced a non-integer: the series is not of LCS type"""


class NegativeRank(MathematicalError):
    """Rank extraction produced a negative integer"""


class OddDegreeUnsupported(MathematicalError):
    """PBW series requested for a Lie algebra with odd-degree part"""


class NotPrimitive(MathematicalError):
    """A Campbell-Hausdorff result left the Lie subspace"""


class NotNilpotent(MathematicalError):
    """Exponential group requested for a non-nilpotent Lie algebra"""
