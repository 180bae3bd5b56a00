"""Exception hierarchy shared by all gaze3d modules."""


class Gaze3DError(Exception):
    """Base class for all gaze3d errors."""


class InvariantViolation(Gaze3DError):
    """A domain-type invariant was violated (bad coordinate, duration, ...)."""


class ScanpathTooShort(Gaze3DError):
    """Operation requires more fixations than the scanpath contains."""


class InvalidSigma(Gaze3DError):
    """Nonpositive in-plane sigma passed to saliency rendering."""


class ZeroVariance(Gaze3DError):
    """Correlation requested on a constant volume."""


class NoFixations(Gaze3DError):
    """Fixation volume contains no fixated voxel."""


class EmptyDistribution(Gaze3DError):
    """A volume that must normalize to a distribution sums to zero."""


class GridMismatch(Gaze3DError):
    """Symbol sequences or substitution matrix built over different grids."""


class DimsMismatch(Gaze3DError):
    """Volumes with different voxel dimensions passed to a pairwise metric."""


class ParseError(Gaze3DError):
    """File could not be parsed into a valid domain object."""


class SchemaVersionError(ParseError):
    """File declares an unsupported schema version."""


class HeaderMismatch(Gaze3DError):
    """Raw volume payload does not match its sidecar header."""


class BadRatios(Gaze3DError):
    """Split ratios do not sum to 1."""


class BadK(Gaze3DError):
    """Invalid fold count for k-fold partitioning."""


class TooFewValues(Gaze3DError):
    """Aggregation requires at least two values."""


class NonFinite(Gaze3DError):
    """Non-finite value where a finite one is required."""


class IndexOutOfRange(Gaze3DError):
    """Lattice index outside the configured axis lengths."""


class ConfigError(Gaze3DError):
    """Invalid CLI / run configuration."""
