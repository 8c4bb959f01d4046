"""Domain error type shared by every module."""


class DomainError(ValueError):
    """Raised when an operation is applied outside its mathematical domain.

    ``code`` is a short stable identifier (the CLI reports it verbatim as
    ``error=<code>``); the exception message carries the human-readable detail.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
