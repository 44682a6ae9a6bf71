"""Exception types shared across the package."""


class DomcountError(Exception):
    """Base class for all package errors."""


class GraphError(DomcountError, ValueError):
    """Invalid graph construction, vertex index, or graph6 input."""


class ConditionError(DomcountError, ValueError):
    """Invalid coloring condition, color multiset, or activation."""


class CapExceededError(DomcountError):
    """An enumeration would exceed its configured size cap."""


class NotRegularError(DomcountError, ValueError):
    """A regular-graph theorem check was given a non-regular graph."""
