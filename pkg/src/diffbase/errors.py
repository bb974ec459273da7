"""Exception hierarchy shared across the package."""


class DiffbaseError(Exception):
    """Base class for all diffbase errors."""


class DomainError(DiffbaseError, ValueError):
    """Invalid argument: bad index, non-prime p, malformed spec, ..."""


class ResourceLimitError(DiffbaseError):
    """Requested computation exceeds a configured size cap."""


class BudgetExhaustedError(DiffbaseError):
    """Node budget ran out before the search space was exhausted.

    Callers must not conclude nonexistence from this.
    """

    def __init__(self, message, nodes=0, best_witness=None):
        super().__init__(message)
        self.nodes = nodes
        self.best_witness = best_witness


class InvalidConstructionError(DiffbaseError, ValueError):
    """A constructive builder received inputs that fail its cover check."""


class CacheFormatError(DiffbaseError):
    """Persistent cache file is corrupt; carries the offending line number."""

    def __init__(self, message, line_no=None):
        super().__init__(message)
        self.line_no = line_no
