"""Exception types shared across the package."""


class DataError(ValueError):
    """Invalid dataset contents or an unsatisfiable data contract."""


class ParseError(DataError):
    """A CSV cell could not be parsed; message names row and column."""


class LabelError(DataError):
    """Label column does not contain exactly two distinct values."""


class ClassSizeError(DataError):
    """A class has too few samples for the requested operation."""


class SchemaError(DataError):
    """Input columns do not match what a model or operation expects."""


class TrainingError(RuntimeError):
    """Training could not produce a valid prototype pair."""


class SingletonClassError(TrainingError):
    """A class has a single member, so it has no same-class neighbor."""


class SearchSpaceError(ValueError):
    """Exhaustive search would exceed the configured size limits."""
