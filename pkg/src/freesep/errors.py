"""Exception types shared across the library.

The CLI maps these to exit codes: validation errors exit 2, pipeline
errors exit 3, verification failures exit 4.
"""


class ValidationError(ValueError):
    """Invalid input: malformed JSON shapes, broken group tables, bad words."""


class PipelineError(RuntimeError):
    """A certificate pipeline could not complete."""


class FaithfulnessError(PipelineError):
    """The injectivity harness found a nonempty word mapping to the identity."""

    def __init__(self, message, word=None):
        super().__init__(message)
        self.word = word


class RetriesExhaustedError(PipelineError):
    """Every configured conjugator produced a faithfulness collision."""


class BudgetExceededError(PipelineError):
    """An exhaustive enumeration exceeded its configured budget."""


class VerificationError(Exception):
    """A certificate failed a replay check; the message names the check."""


class SingularMatrixError(ValueError):
    """Attempt to invert a singular matrix; the message names its role."""
