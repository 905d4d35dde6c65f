"""Exception types shared across the package."""


class QFToolError(Exception):
    """Base class for every error this package raises deliberately."""


class ZeroSlopePair(QFToolError):
    """(0, 0) cannot be reduced to a slope."""


class BaseSlope(QFToolError):
    """Root slopes of the Farey tree have no parents."""


class SameSlope(QFToolError):
    """Operation requires two distinct slopes."""


class NoIntersection(QFToolError):
    """Slopes with zero geometric intersection number."""


class CuspTrace(QFToolError):
    """Trace at +-2 where a strictly loxodromic element was required."""


class BranchJump(QFToolError):
    """Complex-length continuation step jumped branches."""


class DegenerateLength(QFToolError):
    """tanh(lambda/2) vanishes; the twist-length formulas break down."""


class DegenerateMatrix(QFToolError):
    """Matrix is (projectively) the identity or otherwise unusable."""


class InvalidTriple(QFToolError):
    """Trace triple violates the Markov identity beyond tolerance."""


class OutOfRegion(QFToolError):
    """Requested lengths lie outside the image of the pleating plane."""


class StalledContinuation(QFToolError):
    """Newton continuation failed to converge after step halving."""

    def __init__(self, message, partial=None, last_tau=None):
        super().__init__(message)
        self.partial = list(partial) if partial else []
        self.last_tau = last_tau


class SchemaMismatch(QFToolError):
    """CSV row does not match the declared schema."""


class ConfigError(QFToolError):
    """Malformed configuration file."""
