"""Exception types shared across the library."""


class RevxdtError(Exception):
    """Base class for all library errors."""


class ReservedTokenError(RevxdtError):
    """A user word contains one of the reserved endmarker tokens."""


class SchemaError(RevxdtError):
    """A JSON document does not match the expected machine schema."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ValidationError(RevxdtError):
    """A machine is structurally broken (unknown states, foreign letters...)."""


class PreconditionError(RevxdtError):
    """A construction was handed a machine lacking a required property."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AlphabetMismatchError(RevxdtError):
    """Two machines that should share an alphabet do not."""


class WordTooLongError(RevxdtError):
    """Brute-force enumeration was asked for a word above its length bound."""


class WordNotAcceptedError(RevxdtError):
    """A minimal run was requested for a word outside the domain."""


class NoValidSliceError(RevxdtError):
    """No candidate slice is compatible and valid at this input letter."""


class NotFunctionalError(RevxdtError):
    """A machine expected to be functional produced two outputs for one word."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StateBudgetError(RevxdtError):
    """A construction would exceed the configured state cap."""
