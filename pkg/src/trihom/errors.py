"""Exception types shared across the package."""


class TrihomError(Exception):
    """Base class for all package errors."""


class MalformedPairing(TrihomError):
    """A dart appears twice, is missing, is out of range, or pairs with itself."""


class NotTrivalent(TrihomError):
    """Vertex count is not a positive even integer (3 darts per vertex impossible)."""


class NotConnected(TrihomError):
    """The multigraph is not connected (only IHX intermediates may be)."""


class LoopEdge(TrihomError):
    """IHX expansion requested across a self-loop."""


class WrongSize(TrihomError):
    """A labelled graph does not match the expected number of vertices."""


class ResourceLimit(TrihomError):
    """A configurable ceiling (class count, matrix size) was exceeded."""


class Infeasible(TrihomError):
    """No Type I/II polarity assignment exists; carries an exhaustive-search token."""

    def __init__(self, message, token=""):
        super().__init__(message)
        self.token = token


class DimensionTooSmall(TrihomError):
    """Ambient dimension below 4 is outside the construction's range."""


class NoSolution(TrihomError):
    """The target row is not a rational combination of the matrix rows."""
