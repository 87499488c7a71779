"""Exception types shared across the package."""


class FretsemError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FretsemError):
    """Syntax or validation error in requirement, formula, or trace input.

    Carries a 1-based line/column position and, when known, the set of
    token descriptions that would have been accepted at that position.
    """

    def __init__(self, message, line=1, column=1, expected=()):
        self.bare_message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        suffix = ""
        if self.expected:
            suffix = " (expected %s)" % ", ".join(self.expected)
        super().__init__("%d:%d: %s%s" % (line, column, message, suffix))


class EvaluationError(FretsemError):
    """Raised when a formula or expression cannot be evaluated on a trace."""


class UnboundVariableError(EvaluationError):
    def __init__(self, name, index=None):
        self.name = name
        self.index = index
        where = "" if index is None else " at index %d" % index
        super().__init__("unbound variable '%s'%s" % (name, where))


class UnsupportedRequirementError(FretsemError):
    """Raised for field combinations that have no defined meaning."""
