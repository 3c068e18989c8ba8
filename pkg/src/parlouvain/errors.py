"""Exception types raised by parlouvain."""


class GraphFormatError(ValueError):
    """Input text could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFormatError(GraphFormatError):
    pass


class GraphValidationError(ValueError):
    """Parsed values violate a graph invariant (e.g. non-positive weight)."""


class UndefinedModularityError(ZeroDivisionError):
    """Modularity is undefined for a graph with zero total weight."""
