"""Past-time metric temporal logic over finite traces.

Formulas are immutable trees; the temporal operators Y (previous),
O (once), H (historically), and S (since) carry an interval of natural
numbers constraining how far back they look.  A formula is evaluated at
a time index of a trace; ``evaluate`` checks it at the final state.

The evaluator computes, per distinct subformula, the full set of indices
at which it holds (as a bitmask over 0..n), so evaluation is linear in
formula size times trace length rather than exponential.  An independent
brute-force evaluator used to cross-check it lives in ``harness``.
"""

from dataclasses import dataclass

from . import boolexpr
from . import _lex
from .boolexpr import BoolExpr, format_expr
from .errors import EvaluationError, ParseError


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of time distances; hi=None means unbounded."""

    lo: int
    hi: object = None

    def __post_init__(self):
        if not isinstance(self.lo, int) or self.lo < 0:
            raise ValueError("interval lower bound must be a natural number")
        if self.hi is not None and (not isinstance(self.hi, int) or self.hi < self.lo):
            raise ValueError("interval upper bound must be None or >= lower bound")

    @property
    def bounded(self):
        return self.hi is not None

    def contains(self, x):
        return self.lo <= x and (self.hi is None or x <= self.hi)


UNBOUNDED = Interval(0, None)


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class TrueFormula(Formula):
    pass


@dataclass(frozen=True)
class FalseFormula(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    expr: BoolExpr


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Y(Formula):
    sub: Formula


@dataclass(frozen=True)
class Once(Formula):
    interval: Interval
    sub: Formula


@dataclass(frozen=True)
class Historically(Formula):
    interval: Interval
    sub: Formula


@dataclass(frozen=True)
class Since(Formula):
    interval: Interval
    left: Formula
    right: Formula


TRUE = TrueFormula()
FALSE = FalseFormula()


def atom(name):
    """Shorthand for a Boolean-variable atom."""
    return Atom(boolexpr.Var(name))


def lift(expr):
    """Embed a Boolean expression as a formula, mirroring its connectives."""
    if isinstance(expr, boolexpr.Const):
        return TRUE if expr.value else FALSE
    if isinstance(expr, (boolexpr.Var, boolexpr.Cmp)):
        return Atom(expr)
    if isinstance(expr, boolexpr.Not):
        return Not(lift(expr.sub))
    if isinstance(expr, boolexpr.And):
        return And(lift(expr.left), lift(expr.right))
    if isinstance(expr, boolexpr.Or):
        return Or(lift(expr.left), lift(expr.right))
    if isinstance(expr, boolexpr.Implies):
        return Implies(lift(expr.left), lift(expr.right))
    raise TypeError("not a BoolExpr: %r" % (expr,))


# --- derived operators -------------------------------------------------

def ypow(m, phi):
    """Y^m: phi held exactly m steps ago."""
    if not isinstance(m, int) or m < 1:
        raise ValueError("Y^m requires m >= 1, got %r" % (m,))
    return Once(Interval(m, m), phi)


def since_incl_required(phi1, phi2):
    """phi1 has held since, and including, a point where phi2 occurred;
    that point must exist."""
    return Since(UNBOUNDED, phi1, And(phi1, phi2))


def since_incl_optional(phi1, phi2):
    """Like since_incl_required, but vacuously true if phi2 never occurred."""
    return Implies(Once(UNBOUNDED, phi2), Since(UNBOUNDED, phi1, And(phi1, phi2)))


def expand_sugar(kind, *args):
    """Dispatch form of the derived-operator constructors.

    kind is one of 'since_incl_required', 'since_incl_optional', 'ypow'.
    For 'ypow' the arguments are (m, phi); the others take (phi1, phi2).
    """
    if kind == "since_incl_required":
        return since_incl_required(*args)
    if kind == "since_incl_optional":
        return since_incl_optional(*args)
    if kind == "ypow":
        return ypow(*args)
    raise ValueError("unknown sugar kind %r" % (kind,))


# --- evaluation ---------------------------------------------------------

def _atom_mask(expr, trace):
    mask = 0
    for t in range(len(trace)):
        if boolexpr.eval_expr(expr, trace.steps[t], index=t):
            mask |= 1 << t
    return mask


def _mask(phi, trace, memo, full):
    key = id(phi)
    cached = memo.get(key)
    if cached is not None:
        return cached
    length = len(trace)
    if isinstance(phi, TrueFormula):
        m = full
    elif isinstance(phi, FalseFormula):
        m = 0
    elif isinstance(phi, Atom):
        m = _atom_mask(phi.expr, trace)
    elif isinstance(phi, Not):
        m = ~_mask(phi.sub, trace, memo, full) & full
    elif isinstance(phi, And):
        m = _mask(phi.left, trace, memo, full) & _mask(phi.right, trace, memo, full)
    elif isinstance(phi, Or):
        m = _mask(phi.left, trace, memo, full) | _mask(phi.right, trace, memo, full)
    elif isinstance(phi, Implies):
        m = (~_mask(phi.left, trace, memo, full) | _mask(phi.right, trace, memo, full)) & full
    elif isinstance(phi, Y):
        m = (_mask(phi.sub, trace, memo, full) << 1) & full
    elif isinstance(phi, Once):
        sub = _mask(phi.sub, trace, memo, full)
        lo, hi = phi.interval.lo, phi.interval.hi
        top = length - 1 if hi is None else min(hi, length - 1)
        m = 0
        for shift in range(lo, top + 1):
            m |= sub << shift
        m &= full
    elif isinstance(phi, Historically):
        sub = _mask(phi.sub, trace, memo, full)
        lo, hi = phi.interval.lo, phi.interval.hi
        top = length - 1 if hi is None else min(hi, length - 1)
        m = full
        for shift in range(lo, top + 1):
            # Indices below `shift` have no witness at that distance.
            m &= (sub << shift) | ((1 << shift) - 1)
        m &= full
    elif isinstance(phi, Since):
        a = _mask(phi.left, trace, memo, full)
        b = _mask(phi.right, trace, memo, full)
        lo, hi = phi.interval.lo, phi.interval.hi
        m = 0
        run_start = 0  # least r with phi.left true on [r, t]; t+1 if none
        for t in range(length):
            if not (a >> t) & 1:
                run_start = t + 1
            anchor_lo = max(0, run_start - 1)
            if hi is not None:
                anchor_lo = max(anchor_lo, t - hi)
            anchor_hi = t - lo
            if anchor_hi >= anchor_lo:
                width = anchor_hi - anchor_lo + 1
                if (b >> anchor_lo) & ((1 << width) - 1):
                    m |= 1 << t
    else:
        raise TypeError("not a formula: %r" % (phi,))
    memo[key] = m
    return m


def satisfaction_mask(phi, trace):
    """Bitmask whose bit t is set iff ``phi`` holds in ``trace`` at t."""
    full = (1 << len(trace)) - 1
    return _mask(phi, trace, {}, full)


def eval_at(phi, trace, t):
    """Truth value of ``phi`` in ``trace`` at time index ``t``."""
    if not 0 <= t <= trace.last:
        raise EvaluationError(
            "time index %d out of range 0..%d" % (t, trace.last))
    return bool((satisfaction_mask(phi, trace) >> t) & 1)


def evaluate(phi, trace):
    """Truth value of ``phi`` at the end of ``trace``."""
    return eval_at(phi, trace, trace.last)


# --- canonical text -----------------------------------------------------

_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4
_PREC_ATOM = 5

_FTP = Not(Y(TRUE))


def _fmt_interval(interval):
    if interval == UNBOUNDED:
        return ""
    hi = "inf" if interval.hi is None else str(interval.hi)
    return "[%d,%s]" % (interval.lo, hi)


def _match_sugar(phi):
    """Recognize expanded derived operators for macro display."""
    if isinstance(phi, Implies) and isinstance(phi.left, Once) \
            and phi.left.interval == UNBOUNDED \
            and isinstance(phi.right, Since) \
            and phi.right.interval == UNBOUNDED \
            and isinstance(phi.right.right, And) \
            and phi.right.right.left == phi.right.left \
            and phi.right.right.right == phi.left.sub:
        return ("SI", phi.right.left, phi.left.sub)
    if isinstance(phi, Since) and phi.interval == UNBOUNDED \
            and isinstance(phi.right, And) and phi.right.left == phi.left:
        return ("SR", phi.left, phi.right.right)
    if isinstance(phi, Once) and phi.interval.bounded \
            and phi.interval.lo == phi.interval.hi and phi.interval.lo >= 1:
        return ("Ypow", phi.interval.lo, phi.sub)
    return None


def _fmt(phi, fold):
    if fold:
        if phi == _FTP:
            return "ftp", _PREC_ATOM
        sugar = _match_sugar(phi)
        if sugar is not None:
            if sugar[0] == "Ypow":
                _, m, sub = sugar
                return "Y^%d %s" % (m, _fmt_child(sub, _PREC_UNARY, fold)), _PREC_UNARY
            name, a, b = sugar
            return "%s(%s, %s)" % (name, _fmt(a, fold)[0], _fmt(b, fold)[0]), _PREC_ATOM
    if isinstance(phi, TrueFormula):
        return "TRUE", _PREC_ATOM
    if isinstance(phi, FalseFormula):
        return "FALSE", _PREC_ATOM
    if isinstance(phi, Atom):
        return format_expr(phi.expr), _PREC_ATOM
    if isinstance(phi, Not):
        return "!" + _fmt_child(phi.sub, _PREC_UNARY, fold), _PREC_UNARY
    if isinstance(phi, And):
        return "%s & %s" % (_fmt_child(phi.left, _PREC_AND, fold),
                            _fmt_child(phi.right, _PREC_AND + 1, fold)), _PREC_AND
    if isinstance(phi, Or):
        return "%s | %s" % (_fmt_child(phi.left, _PREC_OR, fold),
                            _fmt_child(phi.right, _PREC_OR + 1, fold)), _PREC_OR
    if isinstance(phi, Implies):
        return "%s -> %s" % (_fmt_child(phi.left, _PREC_IMPLIES + 1, fold),
                             _fmt_child(phi.right, _PREC_IMPLIES, fold)), _PREC_IMPLIES
    if isinstance(phi, Y):
        return "Y %s" % _fmt_child(phi.sub, _PREC_UNARY, fold), _PREC_UNARY
    if isinstance(phi, Once):
        return "O%s %s" % (_fmt_interval(phi.interval),
                           _fmt_child(phi.sub, _PREC_UNARY, fold)), _PREC_UNARY
    if isinstance(phi, Historically):
        return "H%s %s" % (_fmt_interval(phi.interval),
                           _fmt_child(phi.sub, _PREC_UNARY, fold)), _PREC_UNARY
    if isinstance(phi, Since):
        text = "(%s S%s %s)" % (_fmt(phi.left, fold)[0],
                                _fmt_interval(phi.interval),
                                _fmt(phi.right, fold)[0])
        return text, _PREC_ATOM
    raise TypeError("not a formula: %r" % (phi,))


def _fmt_child(phi, min_prec, fold):
    text, prec = _fmt(phi, fold)
    if prec < min_prec:
        return "(%s)" % text
    return text


def format_formula(phi, fold_sugar=False):
    """Canonical text form; with fold_sugar, SI/SR/Y^m/ftp print as macros."""
    return _fmt(phi, fold_sugar)[0]


# --- parsing ------------------------------------------------------------

_RESERVED = {"TRUE", "FALSE", "Y", "O", "H", "SI", "SR", "ftp"}


def _parse_interval(ts):
    if not ts.at_punct("["):
        return UNBOUNDED
    ts.next()
    lo_tok = ts.next()
    if lo_tok.kind != _lex.NUM or not isinstance(lo_tok.value, int) or lo_tok.value < 0:
        ts.fail("interval bounds must be natural numbers")
    ts.expect_punct(",")
    hi_tok = ts.next()
    if hi_tok.kind == _lex.IDENT and hi_tok.text == "inf":
        hi = None
    elif hi_tok.kind == _lex.NUM and isinstance(hi_tok.value, int) and hi_tok.value >= 0:
        hi = hi_tok.value
    else:
        ts.fail("interval bounds must be natural numbers or 'inf'")
    ts.expect_punct("]")
    try:
        return Interval(lo_tok.value, hi)
    except ValueError as exc:
        raise ParseError(str(exc), lo_tok.line, lo_tok.col) from None


def _parse_operand(ts):
    tok = ts.peek()
    if tok.kind == _lex.NUM:
        ts.next()
        return tok.value
    if tok.kind == _lex.IDENT:
        ts.next()
        return tok.text
    ts.fail(expected=("variable", "number"))


def _parse_atom_expr(ts):
    """Identifier, constant, or greedy comparison as a Boolean expression."""
    tok = ts.peek()
    if tok.kind == _lex.IDENT and tok.text == "TRUE":
        ts.next()
        return boolexpr.TRUE
    if tok.kind == _lex.IDENT and tok.text == "FALSE":
        ts.next()
        return boolexpr.FALSE
    lhs = _parse_operand(ts)
    nxt = ts.peek()
    if nxt.kind == _lex.PUNCT and nxt.text in boolexpr.CMP_OPS:
        ts.next()
        rhs = _parse_operand(ts)
        return boolexpr.Cmp(lhs, nxt.text, rhs)
    if not isinstance(lhs, str):
        ts.fail("a bare number is not a formula", expected=("comparison operator",))
    return boolexpr.Var(lhs)


def _parse_primary(ts):
    tok = ts.peek()
    if tok.kind == _lex.PUNCT and tok.text == "(":
        ts.next()
        left = _parse_implies(ts)
        s_tok = ts.peek()
        if s_tok.kind == _lex.IDENT and s_tok.text == "S":
            ts.next()
            interval = _parse_interval(ts)
            right = _parse_implies(ts)
            ts.expect_punct(")")
            return Since(interval, left, right)
        ts.expect_punct(")")
        return left
    if tok.kind == _lex.IDENT:
        word = tok.text
        if word == "TRUE":
            ts.next()
            return TRUE
        if word == "FALSE":
            ts.next()
            return FALSE
        if word == "ftp":
            ts.next()
            return Not(Y(TRUE))
        if word in ("SI", "SR"):
            ts.next()
            ts.expect_punct("(")
            a = _parse_implies(ts)
            ts.expect_punct(",")
            b = _parse_implies(ts)
            ts.expect_punct(")")
            return (since_incl_optional if word == "SI" else since_incl_required)(a, b)
    expr = _parse_atom_expr(ts)
    if isinstance(expr, boolexpr.Const):
        return TRUE if expr.value else FALSE
    return Atom(expr)


def _parse_unary(ts):
    tok = ts.peek()
    if tok.kind == _lex.PUNCT and tok.text == "!":
        ts.next()
        return Not(_parse_unary(ts))
    if tok.kind == _lex.IDENT and tok.text == "Y":
        ts.next()
        if ts.take_punct("^"):
            m_tok = ts.next()
            if m_tok.kind != _lex.NUM or not isinstance(m_tok.value, int) or m_tok.value < 1:
                ts.fail("Y^m requires a positive count")
            return ypow(m_tok.value, _parse_unary(ts))
        return Y(_parse_unary(ts))
    if tok.kind == _lex.IDENT and tok.text == "O":
        ts.next()
        return Once(_parse_interval(ts), _parse_unary(ts))
    if tok.kind == _lex.IDENT and tok.text == "H":
        ts.next()
        return Historically(_parse_interval(ts), _parse_unary(ts))
    return _parse_primary(ts)


def _parse_and(ts):
    left = _parse_unary(ts)
    while ts.take_punct("&"):
        left = And(left, _parse_unary(ts))
    return left


def _parse_or(ts):
    left = _parse_and(ts)
    while ts.take_punct("|"):
        left = Or(left, _parse_and(ts))
    return left


def _parse_implies(ts):
    left = _parse_or(ts)
    if ts.take_punct("->"):
        return Implies(left, _parse_implies(ts))
    return left


def parse_formula(text):
    """Parse canonical formula text (macros SI/SR/Y^m/ftp accepted)."""
    ts = _lex.TokenStream(text)
    phi = _parse_implies(ts)
    ts.expect_end()
    return phi
