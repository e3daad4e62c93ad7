"""Exception hierarchy for the tau-method solver.

``TauPolyError`` is the common base.  ``MethodError`` groups everything
that means "the algebra could not complete for this input" (as opposed
to malformed problem text, which raises ``ParseError``); the command
line maps the two branches to distinct exit codes.
"""

from __future__ import annotations


class TauPolyError(Exception):
    """Base class for all errors raised by this package."""


class MethodError(TauPolyError):
    """The solving pipeline cannot proceed for this input."""


# --- polynomial algebra -------------------------------------------------

class NonlinearityError(MethodError):
    """Product of two polynomials that both carry unknowns."""


class UndefinedOrderError(MethodError):
    """Order at zero requested for the zero polynomial."""


class NonDivisibleError(MethodError):
    """Division by x^r requested but the polynomial has a lower-order term."""


class IncompleteAssignmentError(MethodError):
    """Substitution is missing a value for an unknown that occurs."""


# --- linear systems -----------------------------------------------------

class LinearSystemError(MethodError):
    """Base for exact linear-solver failures."""


class NoUniqueSolutionError(LinearSystemError):
    """The system matrix is singular; no unique solution exists."""


class InconsistentSystemError(LinearSystemError):
    """The equations contradict each other."""


class SystemShapeError(LinearSystemError):
    """Equation count and unknown count disagree after dropping 0 = 0 rows."""

    def __init__(self, equations: int, unknowns: int):
        super().__init__(
            f"system is not square: {equations} non-trivial equation(s) "
            f"over {unknowns} unknown(s)"
        )
        self.equations = equations
        self.unknowns = unknowns


# --- ODE model ----------------------------------------------------------

class InvalidOperatorError(MethodError):
    """Every coefficient polynomial of the differential operator is zero."""


class NotWellPosedError(MethodError):
    """The Taylor recurrence of the problem has no unique solution."""


# --- basis / interval ---------------------------------------------------

class InvalidIntervalError(MethodError):
    """Interval endpoints do not satisfy a < b."""


class DiscrepancyRangeError(MethodError):
    """Discrepancy requested with top degree below its starting degree."""


# --- tau solver ---------------------------------------------------------

class DegreeTooSmallError(MethodError):
    """Requested approximation degree is below the method's minimum."""

    def __init__(self, requested: int, minimum: int):
        super().__init__(
            f"approximation degree n={requested} is too small; "
            f"this problem requires n >= {minimum}"
        )
        self.requested = requested
        self.minimum = minimum


class MalformedRegularizationError(MethodError):
    """Regularized operator image has degree below the unknown-count floor."""


# --- analysis -----------------------------------------------------------

class AnalysisError(MethodError):
    """Base for numeric-analysis failures."""


class EmptySamplesError(AnalysisError):
    """An operation received an empty sample set."""


class RemezConvergenceError(AnalysisError):
    """Exchange iteration did not level off within the iteration budget."""

    def __init__(self, message: str, level_low, level_high):
        super().__init__(message)
        self.level_low = level_low
        self.level_high = level_high


class UnreliableDenominatorError(AnalysisError):
    """Best-approximation error is below the working-precision floor."""


# --- problem text -------------------------------------------------------

class ParseError(TauPolyError):
    """Problem text rejected; carries a ParseDiagnostic in ``diagnostic``."""

    def __init__(self, diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic
