"""Exception hierarchy for zeroone-lab.

Every error carries a short ``kind`` identifier and the process exit code the
CLI reports for it. Validation errors also subclass ``ValueError``.
"""

from __future__ import annotations


class ZeroOneError(Exception):
    """Base class for all library errors."""

    kind: str = "error"
    exit_code: int = 1

    def __init__(self, message: str = ""):
        super().__init__(message or self.kind)
        self.message = message or self.kind


class UsageError(ZeroOneError, ValueError):
    kind = "usage"
    exit_code = 2


class InvalidIndexError(UsageError):
    kind = "invalid-index"


class InvalidGridError(UsageError):
    kind = "invalid-grid"


class InvalidParamsError(UsageError):
    kind = "invalid-params"


class InvalidVertexError(UsageError):
    kind = "invalid-vertex"


class InvalidPairError(UsageError):
    kind = "invalid-pair"


class InvalidMapError(UsageError):
    kind = "invalid-map"


class ArityError(UsageError):
    kind = "arity-error"


class InvalidSequenceError(UsageError):
    kind = "invalid-sequence"


class NotEnoughSupportError(UsageError):
    kind = "not-enough-support"


class FormulaSyntaxError(UsageError):
    """Parse failure; ``position`` is the 0-based character offset."""

    kind = "syntax-error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class BindingError(UsageError):
    kind = "binding-error"


class UnknownSentenceError(UsageError):
    kind = "unknown-sentence"

    def __init__(self, sentence_id: str, known: list[str]):
        super().__init__(
            f"unknown sentence '{sentence_id}'; registry: {', '.join(known)}"
        )
        self.sentence_id = sentence_id
        self.known = known


class HypothesisViolationError(ZeroOneError):
    """The base sequence does not satisfy the construction's hypothesis."""

    kind = "hypothesis-violation"
    exit_code = 3

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition


class BudgetExceededError(ZeroOneError):
    kind = "budget-exceeded"
    exit_code = 4


class VerificationFailedError(ZeroOneError):
    kind = "verification-fail"
    exit_code = 5
