"""Exception types shared across the package."""


class GraphError(Exception):
    """Base class for all workbench errors."""


class UnknownNameError(GraphError):
    """A vertex or bundle name does not exist in the graph."""


class ContractError(GraphError):
    """An operation was called with arguments violating its precondition."""


class UnsupportedGraphError(GraphError):
    """The graph lies outside the regime an operation supports."""


class NotFinitelyPresentableError(UnsupportedGraphError):
    """A derived object is infinite; the message names a witness."""


class SizeGuardError(GraphError):
    """An enumeration guard was exceeded."""


class InternalInvariantError(GraphError):
    """Two computations that must always agree disagreed."""
