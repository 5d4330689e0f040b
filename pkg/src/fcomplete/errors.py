"""Exception hierarchy shared by every module of the package."""


class CompletenessError(ValueError):
    """Base class for all errors raised by fcomplete.

    ``line`` is the 1-based operator-file line the error refers to, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LengthMismatchError(CompletenessError):
    pass


class LevelOutOfRangeError(CompletenessError):
    pass


class BadArityError(CompletenessError):
    pass


class ArityMismatchError(CompletenessError):
    pass


class DomainMismatchError(CompletenessError):
    pass


class IndexOutOfRangeError(CompletenessError):
    pass


class UnknownOperatorError(CompletenessError):
    pass


class EmptyInputError(CompletenessError):
    pass


class CapExceededError(CompletenessError):
    pass


class PreconditionFailedError(CompletenessError):
    pass


class WitnessInvalidError(CompletenessError):
    pass


class NotCompleteError(CompletenessError):
    pass


class InconclusiveSubsetError(CompletenessError):
    pass


class DomainNotBooleanError(CompletenessError):
    pass


class SpecInvalidError(CompletenessError):
    pass


class ParseError(CompletenessError):
    pass


class DuplicateNameError(ParseError):
    pass


class MissingDomainError(ParseError):
    pass
