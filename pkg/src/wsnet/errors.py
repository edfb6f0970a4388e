class WSNetError(Exception):
    """Base class for package errors."""


class SelfLoopError(WSNetError, ValueError):
    pass


class DegenerateGraphError(WSNetError):
    pass


class ConfigError(WSNetError, ValueError):
    pass


class TooFewObservationsError(WSNetError, ValueError):
    pass


class ParseError(WSNetError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
