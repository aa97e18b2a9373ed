"""Exception hierarchy shared by all modules."""


class MoviePopError(Exception):
    """Base class for every error raised by this package."""


class IngestError(MoviePopError):
    """An input stream could not be read."""


class FormatError(IngestError):
    """Input is structurally wrong (wrong file, bad header, orphan lines)."""


class ExtractionError(MoviePopError, ValueError):
    """No currency and amount could be recovered from a raw budget string."""


class DomainError(MoviePopError, ValueError):
    """A value lies outside the domain of a function."""


class ParameterError(MoviePopError, ValueError):
    """Invalid parameter combination, e.g. more folds than instances."""


class UndefinedCorrelationError(DomainError):
    """Correlation or trend requested for a constant variable."""
