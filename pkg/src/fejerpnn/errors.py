"""Exception types shared across the package."""


class FejerPnnError(Exception):
    """Base class for every error raised by this package."""


class ZeroVectorError(FejerPnnError):
    """Vector has (numerically) zero L2 norm and cannot be normalized."""


class ParseError(FejerPnnError):
    """Malformed feature file: bad row, bad number, or inconsistent dimension."""


class EmptyDatasetError(FejerPnnError):
    """No data rows were found."""


class DimensionError(FejerPnnError):
    """Requested dimensionality is out of range."""


class DimensionMismatchError(FejerPnnError):
    """Operands have different vector dimensions."""


class EmptySampleError(FejerPnnError):
    """An operation that needs at least one sample received none."""


class EmptySelectionError(FejerPnnError):
    """Cut-off selection over an empty collection."""


class EmptyInputError(FejerPnnError):
    """Clustering input contains no points."""


class UnknownClassError(FejerPnnError):
    """Label not present in the model."""


class ClassTooSmallError(FejerPnnError):
    """A class has too few instances to be split."""


class LengthMismatchError(FejerPnnError):
    """Paired sequences have different lengths."""


class MissingClassError(FejerPnnError):
    """Ground-truth labels do not cover every class."""


class MissingTuningSetError(FejerPnnError):
    """A parameter grid has several candidates but no tuning data was given."""


class FormatError(FejerPnnError):
    """Model file is malformed or truncated."""


class VersionError(FejerPnnError):
    """Model file declares an unsupported format version."""
