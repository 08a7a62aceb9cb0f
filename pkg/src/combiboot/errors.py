"""Exception hierarchy shared by all modules.

The CLI maps ``ConfigError`` to a usage failure (exit 1) and every other
``CombiError`` to a data failure (exit 2).
"""


class CombiError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(CombiError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(CombiError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyCorpusError(ParseError):
    pass


class DataError(CombiError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class AlignmentError(CombiError):
    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message)


class SplitError(CombiError):
    pass


class FoldError(CombiError):
    pass


class DimensionError(CombiError):
    pass


class TrainError(CombiError):
    pass


class DomainError(CombiError):
    pass
