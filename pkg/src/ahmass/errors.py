"""Exception hierarchy with machine-readable error codes.

Every error raised by the library carries a short stable ``code`` string so
the CLI can report failures in a scriptable way (the code ends up in the
JSON error object and determines the exit status).
"""


class AhmassError(Exception):
    """Base class; ``code`` is a stable machine-readable identifier."""

    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DomainError(AhmassError):
    """Input outside the coordinate domain (e.g. |x| too close to 1)."""

    code = "domain"


class DimensionMismatch(AhmassError):
    code = "dimension-mismatch"


class UnsupportedDimension(AhmassError):
    code = "unsupported-dimension"


class NotTimelikeFuture(AhmassError):
    """Balanced mass is undefined unless the mass vector is timelike future."""

    code = "mass/not-timelike-future"


class RadiusInsideCore(AhmassError):
    code = "mass/radius-inside-core"


class NonConvergentSeries(AhmassError):
    """Boundary series does not settle: fitted decay exponent <= 0."""

    code = "mass/non-convergent-series"


class NonIntegrableScalarCurvature(AhmassError):
    code = "mass/non-integrable-scalar-curvature"


class StepTooLargeNearBoundary(AhmassError):
    code = "fd/step-too-large-near-boundary"


class WallMismatch(AhmassError):
    code = "wall/mismatch"


class BadParams(AhmassError):
    code = "family/bad-params"


class SplineDomain(AhmassError):
    code = "family/spline-domain"


class NonMonotone(AhmassError):
    code = "family/non-monotone"


class ConfigError(AhmassError):
    code = "config/schema"
