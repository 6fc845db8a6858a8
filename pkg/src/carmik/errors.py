"""Exception types shared across the package."""


class CarmikError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CarmikError, ValueError):
    """An argument lies outside an operation's domain."""


class EmptyRangeError(DomainError):
    """A range argument has lo > hi."""


class FactorizationEffortError(CarmikError):
    """Factoring the given integer would exceed the configured effort cap.

    Raised instead of ever returning a partial or unverified factorization.
    """


class InvalidClassError(DomainError):
    """The residue class b mod l cannot contain more than one prime
    because gcd(b, l) > 1."""


class SearchExhaustedError(CarmikError):
    """A bounded search ran out of budget before reaching its goal.

    ``stats`` carries whatever best-effort numbers the search collected,
    for diagnostics.
    """

    def __init__(self, message: str, **stats):
        super().__init__(message)
        self.stats = stats


class ConfigError(CarmikError):
    """A run configuration is malformed or inconsistent."""


class StageError(CarmikError):
    """A pipeline stage could not produce what the next stage needs.

    ``stage`` names the failing stage; ``data`` holds the numbers behind
    the failure so callers can report both sides of a guard.
    """

    def __init__(self, stage: str, message: str, **data):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.data = data


class InternalConsistencyError(CarmikError):
    """An invariant that must hold by construction failed.

    Indicates a bug in this package, never bad input.
    """
