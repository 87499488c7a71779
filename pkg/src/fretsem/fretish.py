"""Structured requirement language: model, parser, and unparser.

A requirement is the tuple (scope, condition, timing, response).  The
surface grammar, one requirement per line:

    [<scope phrase>,] [when <boolexpr>[,]]
        the <component> shall [<timing phrase>] satisfy <boolexpr>

    scope phrase  := in <var> mode | notin <var> mode | before <var> mode
                   | after <var> mode | only in <var> mode
                   | only before <var> mode | only after <var> mode
    timing phrase := immediately | at the next timepoint | always | never
                   | eventually | within <nat> <unit> | for <nat> <unit>
                   | after <nat> <unit> | until <boolexpr> | before <boolexpr>

Omitted scope means the whole trace, omitted condition means the
requirement triggers at the start of each scope interval, omitted timing
means eventually.  Time units are parsed and discarded: durations count
discrete trace steps.  Keywords are case-insensitive; variable names are
case-sensitive.  The component name is not part of the model.

Scopes are restricted to single mode variables in the surface grammar,
but the model accepts any Boolean expression as a mode; such requirements
cannot be unparsed.
"""

from dataclasses import dataclass

from . import _lex
from . import boolexpr
from .boolexpr import BoolExpr, format_expr
from .errors import ParseError

SCOPE_KINDS = ("null", "in", "notin", "before", "after",
               "onlyafter", "onlybefore", "onlyin")
ONLY_SCOPES = ("onlyafter", "onlybefore", "onlyin")
TIMING_KINDS = ("immediately", "next", "always", "never", "eventually",
                "within", "for", "after", "until", "before")
_DURATION_TIMINGS = ("within", "for", "after")
_STOP_TIMINGS = ("until", "before")


@dataclass(frozen=True)
class Scope:
    kind: str
    mode: BoolExpr = None

    def __post_init__(self):
        if self.kind not in SCOPE_KINDS:
            raise ValueError("unknown scope kind %r" % (self.kind,))
        if (self.mode is None) != (self.kind == "null"):
            raise ValueError("scope %r %s a mode expression"
                             % (self.kind,
                                "does not take" if self.kind == "null" else "requires"))

    @property
    def is_only(self):
        return self.kind in ONLY_SCOPES


@dataclass(frozen=True)
class Timing:
    kind: str
    duration: int = None
    stop: BoolExpr = None

    def __post_init__(self):
        if self.kind not in TIMING_KINDS:
            raise ValueError("unknown timing kind %r" % (self.kind,))
        if self.kind in _DURATION_TIMINGS:
            if not isinstance(self.duration, int) or self.duration < 1:
                raise ValueError("timing %r requires a duration >= 1" % (self.kind,))
        elif self.duration is not None:
            raise ValueError("timing %r does not take a duration" % (self.kind,))
        if self.kind in _STOP_TIMINGS:
            if self.stop is None:
                raise ValueError("timing %r requires a stop expression" % (self.kind,))
        elif self.stop is not None:
            raise ValueError("timing %r does not take a stop expression" % (self.kind,))


GLOBAL_SCOPE = Scope("null")
EVENTUALLY = Timing("eventually")


@dataclass(frozen=True)
class Requirement:
    scope: Scope
    condition: BoolExpr  # None when omitted
    timing: Timing
    response: BoolExpr


# --- expression parsing --------------------------------------------------

def _parse_operand(ts):
    tok = ts.peek()
    if tok.kind == _lex.NUM:
        ts.next()
        return tok.value
    if tok.kind == _lex.IDENT:
        ts.next()
        return tok.text
    ts.fail(expected=("variable", "number"))


def _parse_primary(ts):
    if ts.take_punct("("):
        inner = _parse_implies(ts)
        ts.expect_punct(")")
        return inner
    tok = ts.peek()
    if tok.kind == _lex.IDENT and tok.text.lower() == "true":
        ts.next()
        return boolexpr.TRUE
    if tok.kind == _lex.IDENT and tok.text.lower() == "false":
        ts.next()
        return boolexpr.FALSE
    lhs = _parse_operand(ts)
    nxt = ts.peek()
    if nxt.kind == _lex.PUNCT and nxt.text in boolexpr.CMP_OPS:
        ts.next()
        return boolexpr.Cmp(lhs, nxt.text, _parse_operand(ts))
    if not isinstance(lhs, str):
        ts.fail("a bare number is not a Boolean expression",
                expected=("comparison operator",))
    return boolexpr.Var(lhs)


def _parse_unary(ts):
    if ts.take_punct("!"):
        return boolexpr.Not(_parse_unary(ts))
    return _parse_primary(ts)


def _parse_and(ts):
    left = _parse_unary(ts)
    while ts.take_punct("&"):
        left = boolexpr.And(left, _parse_unary(ts))
    return left


def _parse_or(ts):
    left = _parse_and(ts)
    while ts.take_punct("|"):
        left = boolexpr.Or(left, _parse_and(ts))
    return left


def _parse_implies(ts):
    left = _parse_or(ts)
    if ts.take_punct("->"):
        return boolexpr.Implies(left, _parse_implies(ts))
    return left


def parse_bool_expr(text):
    """Parse a non-temporal Boolean expression."""
    ts = _lex.TokenStream(text)
    expr = _parse_implies(ts)
    ts.expect_end()
    return expr


# --- requirement parsing --------------------------------------------------

def _parse_mode(ts):
    tok = ts.peek()
    if tok.kind != _lex.IDENT:
        ts.fail(expected=("mode variable",))
    ts.next()
    ts.expect_word("mode")
    return boolexpr.Var(tok.text)


def _parse_scope(ts):
    if ts.take_word("only"):
        tok = ts.take_word("in", "before", "after")
        if tok is None:
            ts.fail(expected=("'in'", "'before'", "'after'"))
        kind = "only" + tok.text.lower()
    elif ts.at_word("in", "notin", "before", "after"):
        kind = ts.next().text.lower()
    else:
        return GLOBAL_SCOPE
    mode = _parse_mode(ts)
    ts.expect_punct(",")
    return Scope(kind, mode)


def _parse_duration(ts):
    tok = ts.peek()
    if tok.kind != _lex.NUM or not isinstance(tok.value, int):
        ts.fail(expected=("duration",))
    if tok.value < 1:
        raise ParseError("duration must be at least 1", tok.line, tok.col)
    ts.next()
    unit = ts.peek()
    if unit.kind != _lex.IDENT or unit.text.lower() == "satisfy":
        ts.fail(expected=("time unit",))
    ts.next()  # units are cosmetic; durations count trace steps
    return tok.value


def _parse_timing(ts):
    tok = ts.take_word("immediately", "always", "never", "eventually")
    if tok is not None:
        return Timing(tok.text.lower())
    if ts.take_word("at"):
        ts.expect_word("the")
        ts.expect_word("next")
        ts.expect_word("timepoint")
        return Timing("next")
    tok = ts.take_word("within", "for", "after")
    if tok is not None:
        return Timing(tok.text.lower(), duration=_parse_duration(ts))
    tok = ts.take_word("until", "before")
    if tok is not None:
        return Timing(tok.text.lower(), stop=_parse_implies(ts))
    return EVENTUALLY


def parse_requirement(text):
    """Parse one requirement, applying the defaults for omitted fields."""
    ts = _lex.TokenStream(text)
    scope = _parse_scope(ts)
    condition = None
    if ts.take_word("when"):
        condition = _parse_implies(ts)
        ts.take_punct(",")
    ts.expect_word("the")
    component = ts.peek()
    if component.kind != _lex.IDENT:
        ts.fail(expected=("component name",))
    ts.next()
    ts.expect_word("shall")
    timing = _parse_timing(ts)
    ts.expect_word("satisfy")
    response = _parse_implies(ts)
    ts.expect_end()
    return Requirement(scope, condition, timing, response)


# --- unparsing -------------------------------------------------------------

_SCOPE_PHRASES = {
    "in": "in", "notin": "notin", "before": "before", "after": "after",
    "onlyafter": "only after", "onlybefore": "only before", "onlyin": "only in",
}


def scope_phrase(scope):
    """Surface phrase for a scope, e.g. 'in m mode' or 'null'."""
    if scope.kind == "null":
        return "null"
    return "%s %s mode" % (_SCOPE_PHRASES[scope.kind], _mode_name(scope.mode))


def _mode_name(mode):
    if not isinstance(mode, boolexpr.Var):
        raise ValueError(
            "mode %s is not a single variable and cannot be written in the "
            "surface grammar" % format_expr(mode))
    return mode.name


def _timing_phrase(timing):
    if timing.kind == "next":
        return "at the next timepoint"
    if timing.kind in _DURATION_TIMINGS:
        return "%s %d ticks" % (timing.kind, timing.duration)
    if timing.kind in _STOP_TIMINGS:
        return "%s %s" % (timing.kind, format_expr(timing.stop))
    return timing.kind


def unparse_requirement(req):
    """Canonical surface text; parsing it back yields an equal Requirement."""
    parts = []
    if req.scope.kind != "null":
        parts.append(scope_phrase(req.scope) + ",")
    if req.condition is not None:
        parts.append("when %s" % format_expr(req.condition))
    parts.append("the component shall")
    parts.append(_timing_phrase(req.timing))
    parts.append("satisfy %s" % format_expr(req.response))
    return " ".join(parts)


# --- requirement files ------------------------------------------------------

def read_requirements(path):
    """Parse a requirement file: one per line, '#' starts a comment."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(parse_requirement(line))
            except ParseError as exc:
                raise ParseError(exc.bare_message, lineno, exc.column,
                                 exc.expected) from None
    return out
