"""Exception hierarchy shared by all modules."""


class FigorderError(Exception):
    """Base class for all library errors."""


class ModelMismatchError(FigorderError):
    """Raised when objects from different geometry models are combined."""


class DegenerateInputError(FigorderError):
    """Raised for coincident anchors, zero vectors and similar degenerate input."""


class NoIsometryError(FigorderError):
    """Raised when anchor distances disagree so no isometry can exist."""


class UnsupportedImageError(FigorderError):
    """Raised when a closed-form image is not available for an isometry."""


class SizeCapError(FigorderError):
    """Raised when a finite figure exceeds the comparator's size cap."""


class UnknownEntryError(FigorderError, KeyError):
    """Raised for catalog ids that do not exist."""

    def __str__(self):
        return Exception.__str__(self)


class DocumentError(FigorderError):
    """A figure or witness document could not be parsed.

    ``line`` and ``column`` are 1-based positions in the source text when
    they are known; ``path`` is the JSON path of the offending object.
    """

    def __init__(self, message, line=None, column=None, path=None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        suffix = f" ({'; '.join(where)})" if where else ""
        super().__init__(message + suffix)
