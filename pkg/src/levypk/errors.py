"""Exception hierarchy.

Validation problems derive from :class:`ModelError` (a ``ValueError``);
numerical failures derive from :class:`NumericalError`.  The CLI maps the
first family to exit code 1 and the second to exit code 2.
"""


class LevyPKError(Exception):
    """Base class for all package errors."""


class ModelError(LevyPKError, ValueError):
    """Invalid model parameters or model file."""


class DomainError(LevyPKError, ValueError):
    """Argument outside the domain where a transform is defined."""


class MeanNotNegative(ModelError):
    """The operation needs E X_1 < 0 (safety loading)."""


class HypothesisViolated(ModelError):
    """Finite-variance / finite-mean hypotheses do not hold."""


class DriftZero(ModelError):
    """The supremum subordinator has zero drift; the Exp-factor form degenerates."""


class ConfigError(LevyPKError, ValueError):
    """Invalid simulation or CLI configuration."""


class NumericalError(LevyPKError, ArithmeticError):
    """Base class for numerical failures."""


class EvaluationError(NumericalError):
    pass


class QuadratureError(NumericalError):
    pass


class RootCountMismatch(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


class PrecisionError(NumericalError):
    pass


class PoleHit(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass


class GridTooCoarse(NumericalError):
    pass


class EnvelopeError(NumericalError):
    pass
