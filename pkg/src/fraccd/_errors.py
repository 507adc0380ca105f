"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class MLOverflowError(OverflowError):
    """A Mittag-Leffler value exceeds the double-precision range."""


class UnsupportedGridError(DomainError):
    """The operation needs a uniform time grid."""


class DegenerateRatesError(DomainError):
    """Growth rates make a closed-form weight singular."""
