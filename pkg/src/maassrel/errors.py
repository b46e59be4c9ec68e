"""Exception hierarchy shared by all modules."""


class MaassrelError(Exception):
    pass


class UsageError(MaassrelError, ValueError):
    """Arguments are individually valid but do not fit together."""


class DomainError(MaassrelError, ValueError):
    """Input lies outside the domain where a formula is asserted."""


class ConfigurationError(MaassrelError, LookupError):
    """Lift data (eigenvalue or base value) is missing."""


class IncompleteTableError(MaassrelError, LookupError):
    """A coefficient table lacks classes needed for a check."""


class TableFormatError(MaassrelError, ValueError):
    """A coefficient table file is malformed."""
