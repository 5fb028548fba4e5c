"""Exception hierarchy shared by every module of the package."""


class SemigroupError(Exception):
    pass


class MalformedTable(SemigroupError, ValueError):
    pass


class OutOfRangeEntry(MalformedTable):
    def __init__(self, i, j, value, order):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"table[{i}][{j}] = {value} is outside [0, {order})")


class AssociativityViolation(SemigroupError, ValueError):
    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"({i}*{j})*{k} != {i}*({j}*{k})")


class BadIdentity(SemigroupError, ValueError):
    def __init__(self, e, i):
        self.e, self.i = e, i
        super().__init__(f"{e} is not an identity: fails on element {i}")


class DegreeMismatch(SemigroupError, ValueError):
    pass


class NotIdempotent(SemigroupError, ValueError):
    def __init__(self, e):
        self.e = e
        super().__init__(f"element {e} is not idempotent")


class NotACongruence(SemigroupError, ValueError):
    def __init__(self, pair, u, side):
        self.pair, self.u, self.side = pair, u, side
        s, t = pair
        super().__init__(
            f"{s} ~ {t} but multiplying by {u} on the {side} separates them"
        )


class MonoidRequired(SemigroupError, ValueError):
    pass


class NotABand(SemigroupError, ValueError):
    pass


class BudgetExceeded(SemigroupError, RuntimeError):
    pass


class ClosureBudgetExceeded(BudgetExceeded):
    pass


class AssignmentBudgetExceeded(BudgetExceeded):
    pass


class UnboundVariable(SemigroupError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"variable {self.name!r} has no value"


class TermSyntaxError(SemigroupError, ValueError):
    def __init__(self, text, position, expected):
        self.text, self.position, self.expected = text, position, expected
        super().__init__(
            f"at position {position} of {text!r}: expected {expected}"
        )


class UnknownName(SemigroupError, KeyError):
    pass


class NoLeastElement(SemigroupError, RuntimeError):
    pass


class RouteDisagreement(SemigroupError, RuntimeError):
    pass


class InputError(SemigroupError, ValueError):
    """Problem in a text input file; carries the 1-based line number."""

    def __init__(self, message, line=None, path=None):
        self.line, self.path = line, path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
