"""Exception types shared across the package."""


class HyshiftError(Exception):
    """Base class for all package errors."""


class WeightSpecError(HyshiftError, ValueError):
    """Malformed weight/space mini-language string.

    Carries the offending position so CLI errors can point at the token.
    """

    def __init__(self, message: str, spec: str = "", position: int = -1):
        self.spec = spec
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position} in {spec!r})"
        super().__init__(message)


class DomainError(HyshiftError, ValueError):
    """Arguments outside an operation's documented domain."""


class SpacingError(HyshiftError, ValueError):
    """Target/time schedule violates the disjoint-block spacing rules."""


class CertificateError(HyshiftError, ValueError):
    """A certificate failed re-verification or has inadmissible parameters."""
