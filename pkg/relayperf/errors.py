class NumericalError(Exception):
    """Base class of every numerical failure raised by the library."""


class DomainError(NumericalError, ValueError):
    """Argument outside the mathematical domain of the function."""


class PoleError(DomainError):
    """Evaluation at (or numerically at) a pole."""


class UnsupportedClassError(NumericalError, ValueError):
    """Meijer-G parameters outside the class the evaluator supports."""


class ConvergenceError(NumericalError, RuntimeError):
    """An iteration, quadrature or contour integral did not converge."""


class ConsistencyError(NumericalError, RuntimeError):
    """Two independent evaluations of the same quantity disagree."""


class StabilityError(NumericalError, RuntimeError):
    """Padé approximant with right half-plane or repeated poles."""


class IllConditionedError(NumericalError, RuntimeError):
    """Linear system too ill-conditioned to be trusted."""


class ConfigError(ValueError):
    """Invalid scenario configuration."""

    def __init__(self, message: str, *, path=None, line: int = None, key: str = None):
        location = ""
        if path is not None:
            location = str(path)
            if line is not None:
                location += f":{line}"
            location += ": "
        if key is not None:
            location += f"'{key}': "
        super().__init__(location + message)
        self.message = message
        self.path = path
        self.line = line
        self.key = key
