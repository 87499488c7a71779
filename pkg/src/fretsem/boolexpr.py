"""Non-temporal Boolean expressions over trace variables.

Expressions are immutable trees built from constants, Boolean variable
references, comparisons between numeric operands, and the usual
connectives.  Numeric values are exact rationals (``fractions.Fraction``
or ``int``); comparisons never go through floating point.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import EvaluationError, UnboundVariableError


@dataclass(frozen=True)
class BoolExpr:
    pass


@dataclass(frozen=True)
class Const(BoolExpr):
    value: bool


@dataclass(frozen=True)
class Var(BoolExpr):
    name: str


# Comparison operands are either a variable name (str) or an exact number.
CMP_OPS = ("<", "<=", "=", "!=", ">=", ">")


@dataclass(frozen=True)
class Cmp(BoolExpr):
    lhs: object
    op: str
    rhs: object

    def __post_init__(self):
        if self.op not in CMP_OPS:
            raise ValueError("unknown comparison operator %r" % (self.op,))
        for side in ("lhs", "rhs"):
            v = getattr(self, side)
            if isinstance(v, bool) or not isinstance(v, (str, int, Fraction)):
                raise ValueError("comparison operand must be a variable name "
                                 "or exact number, got %r" % (v,))


@dataclass(frozen=True)
class Not(BoolExpr):
    sub: BoolExpr


@dataclass(frozen=True)
class And(BoolExpr):
    left: BoolExpr
    right: BoolExpr


@dataclass(frozen=True)
class Or(BoolExpr):
    left: BoolExpr
    right: BoolExpr


@dataclass(frozen=True)
class Implies(BoolExpr):
    left: BoolExpr
    right: BoolExpr


TRUE = Const(True)
FALSE = Const(False)


def _numeric_operand(term, state, index=None):
    if isinstance(term, str):
        try:
            value = state[term]
        except KeyError:
            raise UnboundVariableError(term, index) from None
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise EvaluationError(
                "variable '%s' is not numeric (value %r)" % (term, value))
        return value
    return term


_CMP_FN = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def eval_expr(expr, state, index=None):
    """Evaluate ``expr`` under a state mapping variable names to values.

    ``index`` is only used to point at the offending trace position in
    error messages.
    """
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        try:
            value = state[expr.name]
        except KeyError:
            raise UnboundVariableError(expr.name, index) from None
        if not isinstance(value, bool):
            raise EvaluationError(
                "variable '%s' is not Boolean (value %r)" % (expr.name, value))
        return value
    if isinstance(expr, Cmp):
        lhs = _numeric_operand(expr.lhs, state, index)
        rhs = _numeric_operand(expr.rhs, state, index)
        return _CMP_FN[expr.op](lhs, rhs)
    if isinstance(expr, Not):
        return not eval_expr(expr.sub, state, index)
    if isinstance(expr, And):
        return eval_expr(expr.left, state, index) and eval_expr(expr.right, state, index)
    if isinstance(expr, Or):
        return eval_expr(expr.left, state, index) or eval_expr(expr.right, state, index)
    if isinstance(expr, Implies):
        return (not eval_expr(expr.left, state, index)) or eval_expr(expr.right, state, index)
    raise TypeError("not a BoolExpr: %r" % (expr,))


def variables(expr):
    """All variable names referenced by ``expr`` (Boolean and numeric)."""
    out = set()
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Var):
            out.add(e.name)
        elif isinstance(e, Cmp):
            if isinstance(e.lhs, str):
                out.add(e.lhs)
            if isinstance(e.rhs, str):
                out.add(e.rhs)
        elif isinstance(e, Not):
            stack.append(e.sub)
        elif isinstance(e, (And, Or, Implies)):
            stack.append(e.left)
            stack.append(e.right)
    return out


# Precedence levels for the canonical text form, lowest binds loosest.
# '->' is right-associative; '&' and '|' are left-associative.
_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4
_PREC_ATOM = 5


def format_number(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def _fmt(expr, parent_prec):
    if isinstance(expr, Const):
        return "TRUE" if expr.value else "FALSE", _PREC_ATOM
    if isinstance(expr, Var):
        return expr.name, _PREC_ATOM
    if isinstance(expr, Cmp):
        lhs = expr.lhs if isinstance(expr.lhs, str) else format_number(expr.lhs)
        rhs = expr.rhs if isinstance(expr.rhs, str) else format_number(expr.rhs)
        return "%s %s %s" % (lhs, expr.op, rhs), _PREC_ATOM
    if isinstance(expr, Not):
        return "!" + _child(expr.sub, _PREC_UNARY), _PREC_UNARY
    if isinstance(expr, And):
        return "%s & %s" % (_child(expr.left, _PREC_AND),
                            _child(expr.right, _PREC_AND + 1)), _PREC_AND
    if isinstance(expr, Or):
        return "%s | %s" % (_child(expr.left, _PREC_OR),
                            _child(expr.right, _PREC_OR + 1)), _PREC_OR
    if isinstance(expr, Implies):
        return "%s -> %s" % (_child(expr.left, _PREC_IMPLIES + 1),
                             _child(expr.right, _PREC_IMPLIES)), _PREC_IMPLIES
    raise TypeError("not a BoolExpr: %r" % (expr,))


def _child(expr, min_prec):
    text, prec = _fmt(expr, min_prec)
    if prec < min_prec:
        return "(%s)" % text
    return text


def format_expr(expr):
    """Canonical text for ``expr``; re-parsing it restores the same tree."""
    text, _ = _fmt(expr, 0)
    return text
