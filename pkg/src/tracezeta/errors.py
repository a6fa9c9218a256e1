"""Exception hierarchy.

Every error carries the name of the module that raised it so the CLI can
report where a failure originated.
"""

from __future__ import annotations


class TraceZetaError(Exception):
    module = "tracezeta"

    def __str__(self) -> str:
        return f"[{self.module}] {type(self).__name__}: {super().__str__()}"


# field_core
class FieldError(TraceZetaError):
    module = "field_core"


class CompositeModulus(FieldError, ValueError):
    pass


class InvalidDegree(FieldError, ValueError):
    pass


class EnumerationTooLarge(TraceZetaError):
    module = "field_core"

    def __init__(self, message: str, size: int = 0, budget: int = 0, r: int | None = None):
        super().__init__(message)
        self.size = size
        self.budget = budget
        self.r = r


# variety_counter
class VarietyError(TraceZetaError):
    module = "variety_counter"


class ParseError(VarietyError, ValueError):
    pass


class NotHomogeneous(VarietyError, ValueError):
    pass


# series_ring
class SeriesError(TraceZetaError, ArithmeticError):
    module = "series_ring"


class NotExponentiable(SeriesError):
    pass


class NotLoggable(SeriesError):
    pass


class NotRational(SeriesError):
    pass


class InsufficientTerms(SeriesError):
    def __init__(self, message: str, required: int = 0, available: int = 0):
        super().__init__(message)
        self.required = required
        self.available = available


# zeta_engine
class ZetaError(TraceZetaError):
    module = "zeta_engine"


class FactorizationMismatch(ZetaError):
    pass


class IrrationalCharPoly(ZetaError):
    pass


# trace_cohomology
class TraceError(TraceZetaError):
    module = "trace_cohomology"


class FieldMismatch(TraceError, ValueError):
    pass


class NotAlgebraicInteger(TraceError, ValueError):
    pass


class InvalidMatrix(TraceError, ValueError):
    pass


class RankDeficient(TraceError, ValueError):
    pass


class InvalidFrobeniusData(TraceError, ValueError):
    pass


# weil_verifier
class VerifierError(TraceZetaError):
    module = "weil_verifier"


class NumericalFailure(VerifierError):
    pass


class InconsistentCounts(VerifierError):
    pass


# cm_gross
class CMError(TraceZetaError):
    module = "cm_gross"


class InertPrime(CMError):
    pass


class NormalizationFailure(CMError):
    pass


class NormMismatch(CMError, ValueError):
    pass


class UnsupportedCMField(CMError, ValueError):
    pass
