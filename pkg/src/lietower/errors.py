"""Exception types raised across the package."""


class LieTowerError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InvalidElement(LieTowerError, ValueError):
    """A word or element is not multilinear on its label set, or degrees mismatch."""


class LabelClash(LieTowerError, ValueError):
    """Two operands of a bracket share a label."""


class InvalidInput(LieTowerError, ValueError):
    pass


class NotAComplex(LieTowerError, ValueError):
    """A composite of consecutive boundary maps is nonzero."""


class NotChainMap(LieTowerError, ValueError):
    pass


class BasepointInput(LieTowerError, ValueError):
    """A degenerate weighted tree was passed where a genuine one is required."""


class GroupClash(LieTowerError, ValueError):
    pass


class ConsistencyError(LieTowerError, RuntimeError):
    """An internal cross-check failed (e.g. a claimed cocycle is not closed)."""
