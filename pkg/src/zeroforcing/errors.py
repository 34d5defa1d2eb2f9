"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter is outside the domain an operation is defined on."""


class SelfLoopError(ValueError):
    """An edge joins a vertex to itself."""


class VertexRangeError(ValueError):
    """A vertex index falls outside [0, n)."""


class DegreeOverflowError(ValueError):
    """A gadget injection would push a vertex past the degree cap."""


class BudgetExceededError(RuntimeError):
    """A search exceeded its configured time or node budget."""


class Graph6Error(ValueError):
    """Base class for graph6 encode/decode failures."""


class MalformedHeaderError(Graph6Error):
    """The graph6 size prefix is missing or unreadable."""


class TruncatedBitstreamError(Graph6Error):
    """The graph6 body ends before all adjacency bits are present."""


class TrailingGarbageError(Graph6Error):
    """The graph6 line carries bytes beyond the encoded graph."""


class TooLargeError(Graph6Error):
    """The graph exceeds the largest order graph6 can encode."""
