"""Exception hierarchy.

Two families matter to callers: :class:`InputError` for malformed or
inconsistent input data (CLI exit code 1) and :class:`DomainError` for valid
inputs outside the region where a quantity is defined (CLI exit code 2).
"""


class PMWitnessError(Exception):
    """Base class for all package errors."""

    code = "Error"


class InputError(PMWitnessError):
    code = "InputError"


class DomainError(PMWitnessError):
    code = "DomainError"


class NonNormalized(InputError):
    code = "NonNormalized"


class OutOfRange(InputError):
    code = "OutOfRange"


class OutsideDisk(InputError):
    code = "OutsideDisk"


class UnknownLabel(InputError):
    code = "UnknownLabel"


class ParseError(InputError):
    code = "ParseError"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateRecord(ParseError):
    code = "DuplicateRecord"


class UnknownBasis(ParseError):
    code = "UnknownBasis"


class MissingBasis(InputError):
    code = "MissingBasis"


class InconsistentWeights(InputError):
    code = "InconsistentWeights"


class NoEquivalence(DomainError):
    code = "NoEquivalence"


class Degenerate(DomainError):
    code = "Degenerate"


class BoundDomainError(DomainError):
    """A witness bound evaluated outside its stated domain in ``delta``."""

    code = "BoundDomainError"
