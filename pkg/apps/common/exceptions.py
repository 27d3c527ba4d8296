class MonodromyError(Exception):
    """Base class for every error raised by the monodromy apps."""


class ParseError(MonodromyError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(MonodromyError):
    pass


class NotPositiveTwist(InvariantViolation):
    """A factorization entry is not a conjugate of s1."""

    def __init__(self, index, element):
        self.index = index
        self.element = element
        super().__init__(f"entry {index} {element} is not conjugate to s1")


class NotAdmissible(MonodromyError):
    """The global monodromy is neither s1^k nor (s1 s2)^3 s1^k with k >= 0."""


class BudgetExceeded(MonodromyError):
    pass


class InvalidParameter(MonodromyError, ValueError):
    pass


class MoveOutOfRange(MonodromyError, IndexError):
    pass


class InvalidChart(MonodromyError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        summary = "; ".join(str(v) for v in self.violations[:3])
        super().__init__(f"chart is invalid ({len(self.violations)} violations): {summary}")


class UnknownEdge(MonodromyError):
    pass


class InvalidMonodromyShape(MonodromyError):
    """The higher-side monodromy does not preserve the curve a up to sign."""


class NotAFibrationOverSphere(MonodromyError):
    pass


class NotCanonical(MonodromyError):
    pass
