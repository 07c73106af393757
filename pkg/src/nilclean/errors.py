"""Exception types shared across the package."""


class NilcleanError(Exception):
    """Base class for all package-specific errors."""


class AxiomViolation(NilcleanError):
    """An operation table fails one of the ring axioms."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom!r} violated at {witness}")


class SizeCapExceeded(NilcleanError):
    """A construction would exceed the configured element-count cap."""

    def __init__(self, predicted: int, cap: int):
        self.predicted = predicted
        self.cap = cap
        super().__init__(f"predicted size {predicted} exceeds cap {cap}")


class EndomorphismDomainMismatch(NilcleanError):
    """An endomorphism was supplied for the wrong base ring."""


class InvalidEndomorphism(NilcleanError):
    """A map does not define a unital ring endomorphism."""


class BudgetExceeded(NilcleanError):
    """A certificate search space exceeds the configured budget.

    Deliberately distinct from a negative search result: the caller must
    report the element as unresolved, never as a failure.
    """

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"search space {required} exceeds budget {budget}")


class NotAnIdeal(NilcleanError):
    """A member set is not a two-sided ideal."""


class NotIdempotent(NilcleanError):
    """A corner was requested at a non-idempotent element."""


class NotCentralIdempotent(NilcleanError):
    """A splitting was requested at a non-central or non-idempotent element."""


class IsoCheckFailed(NilcleanError):
    """An internal isomorphism verification failed; signals a core bug."""


class MaterializationRequired(NilcleanError):
    """The operation needs full tables but the ring is closure-backed."""


class ParseError(NilcleanError):
    """Ring-expression syntax error with a byte offset into the input."""

    def __init__(self, offset: int, expected, message: str = ""):
        self.offset = offset
        self.expected = tuple(sorted(expected)) if not isinstance(expected, str) else (expected,)
        text = message or f"expected one of {', '.join(self.expected)}"
        super().__init__(f"at offset {offset}: {text}")


class IntegerOverflow(ParseError):
    """An integer literal in a ring expression is implausibly large."""

    def __init__(self, offset: int, literal: str):
        self.literal = literal
        super().__init__(offset, "smaller integer", f"integer literal {literal!r} too large")
