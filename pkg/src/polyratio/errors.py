"""Exception hierarchy shared by every polyratio module."""


class GeometryError(Exception):
    """Base class for geometry evaluation failures (CLI exit code 3)."""

    kind = "geometry-error"


class BackendMismatch(GeometryError, TypeError):
    kind = "backend-mismatch"


class DegenerateGeometry(GeometryError, ValueError):
    kind = "degenerate"


class GeneralPositionViolation(GeometryError):
    kind = "general-position-violation"


class ToleranceAmbiguity(GeometryError):
    kind = "tolerance-ambiguity"


class NotSimpleChain(GeometryError):
    kind = "not-simple-chain"


class CertificationError(GeometryError):
    """Interval evaluation could not resolve a comparison within the precision cap."""

    kind = "certification-failed"


class NotCoprime(ValueError):
    kind = "not-coprime"


class NotBasicSetup(ValueError):
    kind = "not-basic-setup"


class EpsilonTooLarge(GeometryError):
    kind = "epsilon-too-large"


class MissingDataFile(FileNotFoundError):
    kind = "missing-data-file"


class NotRational(GeometryError):
    kind = "not-rational"


class InitialEvaluationFailed(GeometryError):
    kind = "initial-evaluation-failed"
