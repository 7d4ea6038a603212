"""Exception hierarchy shared across the package.

Everything derives from GraphError so callers can catch one type. The split
into parse-level and invariant-level errors mirrors the CLI exit codes:
ParseError / BadSpec / TooLarge map to exit 1, the rest to exit 2.
"""


class GraphError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# construction / validation


class MalformedRotation(GraphError):
    """A rotation system does not list every dart exactly once at its tail."""


class SelfLoop(GraphError):
    """An edge has identical endpoints; self-loops are not supported."""


class NotConnected(GraphError):
    """The graph is disconnected where a connected graph is required."""


class EulerViolation(GraphError):
    """Vertex/edge/face counts are inconsistent with a planar embedding."""


class DegenerateDual(GraphError):
    """The dual would contain a self-loop because the primal has a bridge."""


class TooSmall(GraphError):
    """The graph is too small for the requested operation."""


# ---------------------------------------------------------------------------
# paths, cycles, trees


class NotAPath(GraphError):
    """A dart sequence does not chain head-to-tail."""


class NotSimple(GraphError):
    """A walk repeats a vertex or an edge where simplicity is required."""


class NotSimpleCycle(GraphError):
    """A dart sequence is not a simple closed cycle."""


class NotSpanningTree(GraphError):
    """An edge set is not a spanning tree of the graph."""


class EdgeInTree(GraphError):
    """A fundamental cycle was requested for a tree edge."""


# ---------------------------------------------------------------------------
# divide and conquer


class NotTriangulated(GraphError):
    """An operation requires every face to have exactly three sides."""


class TooFewTerminals(GraphError):
    """Fewer terminals than the operation supports."""


class BalanceFailure(GraphError):
    """No fundamental cycle achieves the promised terminal balance."""


class SameFace(GraphError):
    """The two faces passed to a separation routine coincide."""


# ---------------------------------------------------------------------------
# oracles, generators, I/O


class TooLarge(GraphError):
    """The instance exceeds the size limit of an exhaustive routine."""


class BadSpec(GraphError):
    """A generator or CLI specification string is malformed."""


class ParseError(GraphError):
    """A graph file is syntactically invalid."""
