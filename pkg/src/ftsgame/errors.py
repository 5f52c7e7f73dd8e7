class FtsGameError(Exception):
    """Base class for errors raised by ftsgame."""


class AmbiguousRank(FtsGameError):
    """A covariant norm sits too close to its vanishing threshold to call."""


class NotNormalized(FtsGameError, ValueError):
    pass


class NotUnitary(FtsGameError, ValueError):
    pass


class MalformedFile(FtsGameError, ValueError):
    pass


class OrderingViolation(FtsGameError):
    """Optimised win probabilities did not come out strictly ordered by rank."""
