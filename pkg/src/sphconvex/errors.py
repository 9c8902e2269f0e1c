"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`GeometryError`
so callers (the CLI in particular) can map it to a single exit status.
"""


class GeometryError(ValueError):
    """A geometric precondition does not hold."""


class DegenerateDirectionError(GeometryError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class DegenerateLuneError(GeometryError):
    pass


class ImproperBodyError(GeometryError):
    """The set is not contained in any open hemisphere."""


class EmptyInteriorError(GeometryError):
    pass


class NotOnBoundaryError(GeometryError):
    pass


class NotSupportingError(GeometryError):
    pass


class UnboundedWulffError(GeometryError):
    pass


class EquatorSingularityError(GeometryError):
    pass
