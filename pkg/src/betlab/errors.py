"""Exception hierarchy shared by every betlab module."""

from __future__ import annotations


class BetlabError(Exception):
    """Base class for all betlab errors."""


class DomainError(BetlabError, ValueError):
    """Input is well-formed but outside the mathematical domain of an operation."""


class NegativeMoney(DomainError):
    pass


class NegativeProbability(DomainError):
    pass


class ProbabilitySumOutOfTolerance(DomainError):
    pass


class DomainExceeded(DomainError):
    """A cash argument fell outside ``[0, domain_max]`` of a utility function."""


class DegenerateDenominator(DomainError):
    pass


class KOutOfRange(DomainError):
    pass


class ROutOfRange(DomainError):
    pass


class UnsupportedUtility(DomainError):
    pass


class MalformedTree(DomainError):
    pass


class TooLargeToEnumerate(DomainError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"{count} policies exceed the enumeration limit of {limit}")
        self.count = count
        self.limit = limit


class ShapeMismatch(DomainError):
    pass


class SpecError(BetlabError, ValueError):
    """Problem-spec document could not be parsed; message carries the field path."""
