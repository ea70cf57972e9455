"""Exception hierarchy shared by every module in the package."""


class TTDAError(Exception):
    """Base class for all errors raised by ttda."""


class ConfigError(TTDAError, ValueError):
    pass


class DomainError(TTDAError, ValueError):
    pass


class EmbeddingError(TTDAError, ValueError):
    """Delay too large for the signal. ``max_tau`` holds the largest feasible delay."""

    def __init__(self, message, max_tau=None):
        super().__init__(message)
        self.max_tau = max_tau


class ExtractionError(TTDAError, ValueError):
    """Analysis window does not fit. ``available`` is the tail length in samples."""

    def __init__(self, message, available=None):
        super().__init__(message)
        self.available = available


class FormatError(TTDAError, ValueError):
    pass


class DegenerateInputError(TTDAError, ValueError):
    pass


class IntegrityError(TTDAError, ValueError):
    pass
