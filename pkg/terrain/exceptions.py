"""
Errors raised by the terrain library.

Management commands map every ``TerrainError`` to a data error (exit 2).
"""


class TerrainError(Exception):
    """Base class of every error raised by the terrain library."""


class ParseError(TerrainError):
    """A text artifact (XYZ cloud, ESRI ASCII grid) could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = 'line %d: %s' % (line, message)
        super().__init__(message)


class EmptyInputError(TerrainError):
    pass


class InsufficientDataError(TerrainError):
    pass


class DegenerateGeometryError(TerrainError):
    """Collinear or otherwise rank-deficient planimetric configuration."""


class ParameterError(TerrainError, ValueError):
    pass


class InsufficientExtentError(TerrainError):
    """The raster is smaller than one roughness window."""


class EmptyMapError(TerrainError):
    """A map has no valid (non-NoData) cell."""


class ShapeError(TerrainError):
    pass


class UndefinedCorrelationError(TerrainError):
    """Fewer than two common cells, or zero variance in one of the maps."""


class InputSetError(TerrainError):
    """A set of roughness maps does not hold every index exactly once."""


class ConsistencyError(TerrainError):
    """Two computations of the same quantity disagree beyond tolerance."""
