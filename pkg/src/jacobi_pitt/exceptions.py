"""Exception hierarchy shared by the library and the command line front end."""


class JacobiPittError(Exception):
    """Base class for all library errors."""


class ValidationError(JacobiPittError, ValueError):
    """Input violates a documented precondition."""


class NumericalError(JacobiPittError, ArithmeticError):
    """A numerical procedure could not deliver a trustworthy value."""


class PoleError(NumericalError):
    """Evaluation requested at (or numerically on top of) a pole."""


class ConvergenceError(NumericalError):
    """A series or an iterative scheme ran out of budget."""


class QuadratureError(NumericalError):
    """Adaptive quadrature exceeded its panel budget."""
