"""
errors.py

Exception hierarchy for the wsym toolkit.

All domain errors derive from WsymError, which is itself a ValueError so callers that
already guard file and parameter handling with ``except ValueError`` keep working.
Checks whose outcome is a verdict (validate, invariance_defect, skew_defect, ...) do not
raise; they return a Report. The exceptions below are for violated preconditions and
for internal contradictions.
"""


class WsymError(ValueError):
    """Base class for every error raised by the toolkit."""


class InputError(WsymError):
    """Malformed JSON files, bad CLI arguments or unparseable values."""


class DimensionMismatchError(WsymError):
    """Vector, matrix or subspace lengths disagree."""


class NotInSubspaceError(WsymError):
    """A vector required to lie in a given subspace (h, m, ...) does not."""


class DerivationError(WsymError):
    """An action matrix is not a derivation of the ideal in a semidirect sum."""


class HomomorphismError(WsymError):
    """The action map of a semidirect sum does not preserve brackets."""


class NotAnIdealError(WsymError):
    """A subspace required to be an ideal is not bracket-stable."""


class NotNilpotentError(WsymError):
    """A subalgebra required to be nilpotent has a stationary nonzero series term."""


class UnknownExampleError(WsymError):
    """Unknown catalog or witness example id."""


class ReductiveSpaceError(WsymError):
    """
    A reductive space invariant fails.

    The ``kind`` attribute names the violated invariant and is one of
    REDUCTIVE_ERROR_KINDS.
    """

    def __init__(self, kind: str, message: str):
        if kind not in REDUCTIVE_ERROR_KINDS:
            raise ValueError(f"Unknown reductive space error kind: {kind}")
        super().__init__(f"{kind}: {message}")
        self.kind = kind


REDUCTIVE_ERROR_KINDS = (
    "not-complementary",
    "not-ad-invariant-complement",
    "degenerate-metric",
    "metric-not-isotropy-invariant",
)


class InternalContradictionError(WsymError):
    """
    A hard assertion failed that would contradict a proven statement (the null clause
    of the geodesic lemma, the two-step theorem, certificate soundness). Never expected;
    reported as a failed verdict rather than an input error.
    """
