"""Exception types raised across the package.

Every error carries a short ``tag`` so the command line can surface it
verbatim in reports.
"""

from __future__ import annotations


class AffineCodesError(Exception):
    tag = "Error"


class NonPrime(AffineCodesError, ValueError):
    tag = "NonPrime"


class ReducibleModulus(AffineCodesError, ValueError):
    tag = "ReducibleModulus"


class ZeroInverse(AffineCodesError, ZeroDivisionError):
    tag = "ZeroInverse"


class FieldMismatch(AffineCodesError, ValueError):
    tag = "FieldMismatch"


class NotADivisor(AffineCodesError, ValueError):
    tag = "NotADivisor"


class NonCoprimeMultiplier(AffineCodesError, ValueError):
    tag = "NonCoprimeMultiplier"


class InvalidDefiningSet(AffineCodesError, ValueError):
    tag = "InvalidDefiningSet"


class TooLarge(AffineCodesError, ValueError):
    tag = "TooLarge"


class AlphabetMismatch(AffineCodesError, ValueError):
    tag = "AlphabetMismatch"


class SingularMap(AffineCodesError, ValueError):
    tag = "SingularMap"


class NotSemilinear(AffineCodesError, ValueError):
    tag = "NotSemilinear"


class TrivialCode(AffineCodesError, ValueError):
    tag = "TrivialCode"


class InternalInconsistency(AffineCodesError, AssertionError):
    tag = "InternalInconsistency"


class NotAPGroup(AffineCodesError, ValueError):
    tag = "NotAPGroup"


class NotACocycle(AffineCodesError, ValueError):
    tag = "NotACocycle"


class CondViolation(AffineCodesError, ValueError):
    """Raised when a (chi, f) pair fails one of the admissibility clauses.

    ``clause`` names the failing clause, e.g. ``"f^2=0"``.
    """

    tag = "CondViolation"

    def __init__(self, clause: str, message: str | None = None):
        self.clause = clause
        super().__init__(message or f"condition violated: {clause}")


class DegenerateA(AffineCodesError, ValueError):
    tag = "DegenerateA"


class ChiNotLinear(AffineCodesError, ValueError):
    tag = "ChiNotLinear"


class MalformedDescriptor(AffineCodesError, ValueError):
    tag = "MalformedDescriptor"


class NotRegular(AffineCodesError, ValueError):
    tag = "NotRegular"


class BudgetExceeded(AffineCodesError, RuntimeError):
    """Search stopped at its node budget; ``partial`` holds what was found."""

    tag = "BudgetExceeded"

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
