"""Exception hierarchy shared by all modules."""


class EmbeddingError(ValueError):
    """Base class for library errors."""


class DimensionError(EmbeddingError):
    """Empty input or mismatched lengths/shapes."""


class ParameterError(EmbeddingError):
    """Parameter outside its admissible range."""


class ResourceLimitError(EmbeddingError):
    """A configured size or enumeration cap would be exceeded."""


class NumericError(EmbeddingError):
    """Non-finite values or an iterative method that failed to converge."""


class InputFormatError(EmbeddingError):
    """Malformed input file."""


class SearchRangeError(EmbeddingError):
    """Threshold search ran off the end of its range."""

    def __init__(self, message: str, history: list | None = None):
        super().__init__(message)
        self.history = list(history or [])
