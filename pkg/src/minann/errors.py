"""Exception hierarchy shared by all modules."""


class MinannError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(MinannError, ValueError):
    """Invalid argument (counts, tolerances, radii)."""


class DomainError(MinannError, ValueError):
    """Point or value outside the domain of an operation."""


class ResolutionError(MinannError):
    """Grid or series too coarse for the requested computation."""


class DegeneracyError(MinannError):
    """Geometric degeneracy, e.g. vanishing tangent cross product."""


class DataError(MinannError, ValueError):
    """Weierstrass data that cannot be evaluated (g_z = 0 and the like)."""


class RepresentabilityError(DataError):
    """Weierstrass data whose real periods do not vanish."""


class AnalyticityError(MinannError):
    """Laurent coefficients disagree between extraction radii."""


class NormalizationError(MinannError):
    """Boundary frame normalization could not be achieved."""


class FitError(MinannError):
    """Plane/circle fit on degenerate (collinear) samples."""


class FlatSurfaceError(MinannError):
    """The surface is flat: g/g_z has no z^1 mode."""


class InconsistencyError(MinannError):
    """Recovered quantities contradict each other."""


class FormatError(MinannError, ValueError):
    """Malformed input file; the message names the offending field."""
