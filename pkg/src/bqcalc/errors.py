"""Exception hierarchy.

Errors that signal a violated precondition (bad input, failed hypothesis)
derive from :class:`UsageError` and map to CLI exit code 2.  Errors that
signal a failed verification derive from :class:`VerificationError` and map
to exit code 3.
"""


class BqError(Exception):
    """Base class for all library errors."""


class UsageError(BqError, ValueError):
    pass


class VerificationError(BqError, ArithmeticError):
    pass


class DomainError(UsageError):
    pass


class BoundExceeded(UsageError):
    pass


class FieldMismatch(UsageError):
    pass


class ParseError(UsageError):
    pass


class VariantError(UsageError):
    pass


class SpecMismatch(UsageError):
    pass


class NotGraded(UsageError):
    pass


class DegreeCapExceeded(UsageError):
    pass


class HypothesisError(UsageError):
    pass


class DenominatorVanishes(HypothesisError):
    def __init__(self, j: int, message: str | None = None):
        self.j = j
        super().__init__(message or f"denominator vanishes at j = {j} (ord(q) divides j+1)")


class ParameterError(UsageError):
    pass


class NotHomogeneous(UsageError):
    pass


class NotAGroup(UsageError):
    pass


class DegreeMismatch(UsageError):
    pass


class Inconclusive(UsageError):
    pass


class CentralityFailure(VerificationError):
    pass


class RelationNotPreserved(VerificationError):
    pass


class ValidationFailure(VerificationError):
    pass


class NotProportional(VerificationError):
    pass


class ObstructionAt(UsageError):
    def __init__(self, b: int, c: int):
        self.b, self.c = b, c
        super().__init__(f"diagonalization obstructed at (b, c) = ({b}, {c})")
