"""Exception hierarchy shared by the library and the command line."""


class HyperminError(Exception):
    """Base class for all errors raised by hypermin."""

    exit_code = 1


class UsageError(HyperminError, ValueError):
    """Invalid arguments, e.g. edges over different universes."""

    exit_code = 2


class DomainError(UsageError):
    """A numeric argument lies outside the domain where a formula is valid."""


class ResourceCapError(HyperminError):
    """A request exceeds a documented memory or enumeration cap."""

    exit_code = 4


class VerificationError(HyperminError):
    """An inequality or cross-check failed."""

    exit_code = 3
