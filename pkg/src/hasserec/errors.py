"""Exception types raised by hasserec.

Every error derives from :class:`RecurrenceError`, so callers that only care
about "the input was bad" can catch one class.
"""


class RecurrenceError(Exception):
    """Base class for all library errors."""


class ValidationError(RecurrenceError):
    """Input data violates a documented precondition."""


class RingMismatch(ValidationError):
    pass


class NotPrime(ValidationError):
    pass


class DivisionByZero(RecurrenceError, ZeroDivisionError):
    pass


class NotAField(RecurrenceError, ArithmeticError):
    pass


class InexactDivision(RecurrenceError, ArithmeticError):
    """Exact division requested where the divisor does not divide."""


class SingularSystem(RecurrenceError, ArithmeticError):
    pass


class NotMonic(ValidationError):
    pass


class DuplicateRoot(ValidationError):
    pass


class MultiplicityMismatch(ValidationError):
    pass


class NotAllRootsInK(ValidationError):
    pass


class InsufficientPrefix(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class BadInitLength(ValidationError):
    pass


class InternalInvariantBroken(RecurrenceError, AssertionError):
    """A result contradicted a structural guarantee; indicates a bug or a bad basis."""
