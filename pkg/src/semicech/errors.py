"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ContextualityError(Exception):
    """Base class for all errors raised by :mod:`semicech`."""


# -- semiring capabilities -------------------------------------------------


class SemiringError(ContextualityError):
    pass


class NotCancellative(SemiringError):
    """Raised when a ring of differences is requested for a non-cancellative semiring."""


class NoNegation(SemiringError):
    """Raised when an alternating-sign operation is requested without additive inverses."""


class NotSemifield(SemiringError):
    """Raised when an operation needs multiplicative inverses of nonzero elements."""


# -- scenarios -------------------------------------------------------------


class ScenarioError(ContextualityError, ValueError):
    pass


class CoverageError(ScenarioError):
    pass


class MaximalityError(ScenarioError):
    pass


class EmptyOutcome(ScenarioError):
    pass


class NotSubset(ScenarioError):
    pass


# -- models ----------------------------------------------------------------


class ModelError(ContextualityError, ValueError):
    pass


class NormalizationError(ModelError):
    def __init__(self, context, total, expected=None):
        self.context = tuple(context)
        self.total = total
        msg = f"table for context {''.join(self.context) or '()'} sums to {total}"
        if expected is not None:
            msg += f", expected {expected}"
        super().__init__(msg)


class UnknownEvent(ModelError):
    pass


class InvalidValue(ModelError):
    pass


class NotSubcontext(ModelError):
    pass


class Disturbing(ModelError):
    """The model's context marginals disagree on some intersection.

    ``witness`` is a ``(context_j, context_k, event)`` triple naming the first
    disagreement found.
    """

    def __init__(self, witness):
        self.witness = witness
        ctx_j, ctx_k, event = witness
        super().__init__(
            f"marginals of {''.join(ctx_j)} and {''.join(ctx_k)} disagree at {event}"
        )


class ZeroMeasureEvent(ModelError):
    pass


class NoAgreeingSection(ModelError):
    pass


class TooLarge(ContextualityError):
    def __init__(self, size, cutoff):
        self.size = size
        self.cutoff = cutoff
        super().__init__(f"enumeration of {size} items exceeds cutoff {cutoff}")


# -- file formats ----------------------------------------------------------


class FormatError(ContextualityError):
    pass


class ModelSyntaxError(FormatError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ModelSemanticError(FormatError):
    """A well-formed document that does not describe a valid model.

    ``location`` is a dotted path into the document (``tables.ab.00``) and
    ``line`` the best-effort source line of that path.
    """

    def __init__(self, message, location, line=None, cause=None):
        self.location = location
        self.line = line
        self.cause = cause
        where = location if line is None else f"{location} (line {line})"
        super().__init__(f"{where}: {message}")
