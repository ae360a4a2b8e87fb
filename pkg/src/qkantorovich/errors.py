"""Exception types raised by the q-calculus and operator routines."""


class QDomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class QRangeError(OverflowError):
    """A linear-space result is not representable as a 64-bit float."""


class TruncationError(RuntimeError):
    """A series or k-sum did not reach its tail tolerance within the term cap."""


class DivergenceError(RuntimeError):
    """Partial sums of a q-series grew past the configured magnitude cap."""


class GrowthError(ValueError):
    """A target function exceeded its declared growth envelope at a sampled point."""
