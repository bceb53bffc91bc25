class SemanticRGError(Exception):
    """Base class for every error raised by this package"""


class InvalidArgumentError(SemanticRGError, ValueError):
    """An argument violates an operation's precondition"""


class ConfigError(SemanticRGError):
    """Scenario or settings file is malformed, unknown or inconsistent"""


class UnknownScenarioError(ConfigError):
    """No built-in scenario or scenario file by that name"""


class OutputError(ConfigError):
    """A declared output path cannot be written"""


class NumericError(SemanticRGError, ArithmeticError):
    """A well-formed input has no finite numeric answer"""


class DegeneratePriorError(NumericError):
    """Prior has no mass on the grid after truncation"""


class UnsatisfiableGoalError(NumericError):
    """Goal has zero logical probability under the prior"""


class UndefinedRatioError(NumericError):
    """Likelihood puts mass where the prior has none"""


class UnreachableLabelError(NumericError):
    """Shannon channel column is identically zero"""


class UnreachableGoalError(NumericError):
    """Every truth value of a goal lies below the solver floor"""


class NoFeasibleFitError(NumericError):
    """Fitting objective is -inf over the whole search box"""


class DegenerateSurrogateError(NumericError):
    """Source distribution has zero variance"""


class InfiniteDivergenceError(NumericError):
    """KL divergence is infinite (q is zero where p is positive)"""


# CLI exit classes
EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
