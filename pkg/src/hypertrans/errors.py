"""Exception hierarchy shared by the whole package."""


class HypertransError(Exception):
    """Base class for all package errors."""


class DivisionByZero(HypertransError, ZeroDivisionError):
    pass


class PoleAtPoint(HypertransError):
    """Evaluation requested at a zero of the denominator."""


class ParseError(HypertransError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class OrderZero(HypertransError):
    """Companion form requested for an order-0 operator."""


class DivisionByZeroOperator(HypertransError):
    pass


class ZeroRhs(HypertransError):
    """The criterion requires a nonzero right-hand side."""


class SingularGauge(HypertransError):
    pass


class SingularExpansionPoint(HypertransError):
    pass


class CyclicSearchExhausted(HypertransError):
    """No cyclic vector found within the retry budget."""


class ConstantPartOutOfScope(HypertransError):
    """Unipotent-radical computation for a constant part is not provided.

    The constant case needs the dedicated constant-coefficient unipotent
    radical algorithm, which this tool deliberately does not implement.
    """


class UnsupportedPlace(HypertransError):
    """Indicial polynomial degenerated; no certified bound exists."""


class BudgetExceeded(HypertransError):
    """A certified bound exceeds the configured degree cap."""
