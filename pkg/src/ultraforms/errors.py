"""Exception hierarchy shared by all modules."""


class UltraformsError(Exception):
    """Base class for every error raised by the library."""


class DomainError(UltraformsError, ValueError):
    """An argument lies outside the domain of an operation (zero element, empty form...)."""


class PreconditionError(UltraformsError, ValueError):
    """Inputs violate a stated precondition (dependent basis, l == p, missing roots of unity)."""


class DegenerateBasisError(PreconditionError):
    """The generators produced for a basis do not separate l-th power classes."""


class ResolutionError(UltraformsError, LookupError):
    """A name in a group word has no binding in the environment."""


class ParseError(UltraformsError, ValueError):
    """Malformed element text.  ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, text="", position=0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class ResourceLimitError(UltraformsError, RuntimeError):
    """An enumeration would exceed the configured size limit."""


class AbhyankarError(UltraformsError, ValueError):
    """Completion data with s + t > 1."""


class CertificateError(UltraformsError, RuntimeError):
    """A computed certificate failed its own verification.  Always a bug."""
