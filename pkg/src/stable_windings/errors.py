"""Typed errors shared across the package."""


class PoleError(ValueError):
    """Gamma-family function evaluated at a non-positive integer pole."""


class DomainError(ValueError):
    """Argument outside the strip or interval where a formula is valid."""


class OriginError(ValueError):
    """Path functional that needs |X| > 0 met a zero-modulus point."""


class RangeError(ValueError):
    """Generalized-inverse query beyond the total mass of a clock."""


class NoExitError(ValueError):
    """Reversal requested from a path that never visits the ball."""


class DegenerateError(RuntimeError):
    """Weighted estimator in which every weight vanished."""


class RegimeError(ValueError):
    """Experiment regime incompatible with the stability index."""
