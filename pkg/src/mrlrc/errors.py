"""Exception types raised across the package."""


class MrlrcError(Exception):
    """Base class for all package errors."""


class NotPrime(MrlrcError, ValueError):
    pass


class FieldOverflow(MrlrcError, OverflowError):
    pass


class NotFound(MrlrcError, LookupError):
    pass


class NotInGroup(MrlrcError, ValueError):
    pass


class FieldMismatch(MrlrcError, ValueError):
    pass


class NotSquare(MrlrcError, ValueError):
    pass


class NoSolution(MrlrcError, ValueError):
    pass


class ShapeMismatch(MrlrcError, ValueError):
    pass


class DuplicateElements(MrlrcError, ValueError):
    pass


class Collision(MrlrcError, ValueError):
    pass


class LocalNotMDS(MrlrcError, ValueError):
    def __init__(self, group, columns):
        self.group = group
        self.columns = tuple(columns)
        super().__init__(f"local block {group} has a singular minor on columns {list(self.columns)}")


class RankDeficient(MrlrcError, ValueError):
    pass


class LengthMismatch(MrlrcError, ValueError):
    pass


class Uncorrectable(MrlrcError):
    pass


class Inconsistent(MrlrcError):
    pass


class TooManyErasures(MrlrcError):
    pass


class BudgetExceeded(MrlrcError):
    def __init__(self, patterns, checks, budget):
        self.patterns = patterns
        self.checks = checks
        self.budget = budget
        super().__init__(
            f"verification needs {checks} rank checks ({patterns} patterns), budget is {budget}")


class OutOfScope(MrlrcError, ValueError):
    pass


class SweepExhausted(MrlrcError, RuntimeError):
    pass


class PreconditionViolated(MrlrcError, ValueError):
    pass


class OmegaTooSmall(MrlrcError, RuntimeError):
    pass


class NotOnCurve(MrlrcError, ValueError):
    pass


class SingularPoint(MrlrcError, ValueError):
    pass


class NotCollinear(MrlrcError, ValueError):
    pass


class DegenerateScaling(MrlrcError, ValueError):
    pass


class FormatError(MrlrcError, ValueError):
    """Malformed textual input (field header, matrix, code or family file)."""


class DivideByZeroError(MrlrcError, ZeroDivisionError):
    pass


class ZeroInput(MrlrcError, ValueError):
    pass
