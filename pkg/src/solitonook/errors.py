"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class WindowError(RuntimeError):
    """The time grid is too short for the pulse it carries."""


class NumericOverflowError(RuntimeError):
    """Eigenvector growth overflowed float64; carries the offending time."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DegenerateEigenvalueError(RuntimeError):
    """|a'(lambda)| fell below the resolvable threshold."""


class FrameError(ValueError):
    """A frame violates the inter-symbol guard constraints."""


class SearchSpaceError(ValueError):
    """Refused search whose enumeration cost is out of budget."""


class ConfigError(ValueError):
    """Invalid experiment configuration; `path` names the offending field."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
