"""Exception hierarchy shared by the solvers and the CLI."""


class DiracBoxError(Exception):
    """Base class for all errors raised by :mod:`diracbox`."""


class NoSignChange(DiracBoxError):
    """The objective has the same sign at both effective bracket ends."""


class MaxIterationsExceeded(DiracBoxError):
    """Bisection ran out of iterations before meeting either tolerance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidBracket(DiracBoxError):
    """A branch bracket shows no sign change during a coupled sweep."""


class ConvergenceFailure(DiracBoxError):
    """An eigenvalue solve did not converge.

    ``context`` carries whatever diagnostics the raising solver had: the
    offending quantum numbers, the last iterate and its residuals.
    """

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class NotConverged(DiracBoxError):
    """A spinor field was requested for an unconverged mode."""


class InsufficientSpectrum(DiracBoxError):
    """A level table does not reach the top of the requested energy grid."""
