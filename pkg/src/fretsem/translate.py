"""Translation of requirements to past-time MTL formulas.

Layers, composed bottom-up:

  * point formulas mark positions of interest along the trace (first time
    point, first/last state in or out of a mode, and the first occurrence
    of those);
  * the core formula states the per-point obligation of a timing field;
  * the base formula imposes the core on a generic interval framed by
    left/right endpoint formulas (the last, unclosed interval has its own
    form);
  * the general formula instantiates the endpoints from the scope field
    and imposes the base formula on the whole trace.

No algebraic simplification is applied; the emitted shape is the
canonical one golden tests pin down.
"""

from . import boolexpr
from .errors import UnsupportedRequirementError
from .fretish import Requirement, Timing
from .mtl import (UNBOUNDED, And, Historically, Implies, Interval, Not, Once,
                  Or, Y, TRUE, lift, since_incl_optional, since_incl_required,
                  ypow)
from .semantics import dual_timing

FTP = Not(Y(TRUE))


def ftp():
    """First time point of the trace."""
    return FTP


def fim(mode):
    """First state of a mode interval."""
    return And(mode, Or(FTP, Y(Not(mode))))


def lim(mode):
    """State just after the last state of a mode interval."""
    return And(Not(mode), Y(mode))


def fnim(mode):
    """First state of a complement (not-in-mode) interval."""
    return And(Not(mode), Or(FTP, Y(mode)))


def lnim(mode):
    """State just after the last state of a complement interval."""
    return And(mode, Y(Not(mode)))


def ffim(mode):
    """First state of the first mode interval."""
    return And(fim(mode), Or(FTP, Y(Historically(UNBOUNDED, Not(mode)))))


def flim(mode):
    """First state just after the first mode interval."""
    return And(lim(mode), Y(Historically(UNBOUNDED, Not(lim(mode)))))


_POINTS = {"ftp": None, "fim": fim, "lim": lim, "fnim": fnim,
           "lnim": lnim, "ffim": ffim, "flim": flim}


def point_formula(kind, mode=None):
    """Closed formula for a point of interest; ``mode`` is a formula."""
    if kind == "ftp":
        return FTP
    fn = _POINTS.get(kind)
    if fn is None:
        raise ValueError("unknown point of interest %r" % (kind,))
    if mode is None:
        raise ValueError("point %r requires a mode" % (kind,))
    return fn(mode)


def scope_endpoints(scope):
    """(left, right) endpoint formulas of a scope's intervals.

    ``right`` is None for the scopes whose intervals run to the end of
    the trace (global, after, only-before).
    """
    mode = None if scope.mode is None else lift(scope.mode)
    if scope.kind == "null":
        return FTP, None
    if scope.kind == "before":
        return FTP, ffim(mode)
    if scope.kind == "after":
        return flim(mode), None
    if scope.kind == "in":
        return fim(mode), lim(mode)
    if scope.kind in ("notin", "onlyin"):
        return fnim(mode), lnim(mode)
    if scope.kind == "onlybefore":
        return ffim(mode), None
    if scope.kind == "onlyafter":
        return FTP, flim(mode)
    raise ValueError("unknown scope kind %r" % (scope.kind,))


def trigger_formula(cond, left):
    """Holds where the condition turns true, or holds at the interval
    start marked by ``left``.  Both arguments are formulas."""
    return Or(And(cond, Y(Not(cond))), And(cond, left))


def no_triggers_formula(cond, left):
    """Holds while the condition has stayed false since the interval
    start marked by ``left``."""
    return since_incl_required(Not(cond), left)


def core_formula(timing, cond, res, left):
    """Per-point obligation of a timing field.

    ``cond`` is a Boolean expression or None; ``res`` a Boolean
    expression; ``left`` the left-endpoint formula.  The never and after
    timings must be normalized away by the caller.
    """
    kind = timing.kind
    res_f = lift(res)
    if kind in ("never", "after"):
        raise ValueError("timing %r must be normalized before core_formula" % kind)
    stop_f = lift(timing.stop) if timing.stop is not None else None
    if cond is None:
        if kind == "immediately":
            return Implies(left, res_f)
        if kind == "next":
            return Implies(Y(left), res_f)
        if kind == "always":
            return res_f
        if kind == "eventually":
            return Not(since_incl_required(Not(res_f), left))
        if kind == "until":
            return Implies(since_incl_required(Not(stop_f), left), res_f)
        if kind == "before":
            return Implies(stop_f,
                           And(Not(left),
                               Not(Y(since_incl_required(Not(res_f), left)))))
        if kind == "for":
            return Implies(Once(Interval(0, timing.duration), left), res_f)
        if kind == "within":
            return Implies(since_incl_required(Not(res_f), left),
                           Once(Interval(0, timing.duration - 1), left))
    else:
        trig = trigger_formula(lift(cond), left)
        no_trig = no_triggers_formula(lift(cond), left)
        if kind == "immediately":
            return Implies(trig, res_f)
        if kind == "next":
            return Implies(Y(trig), Or(res_f, left))
        if kind == "always":
            return Or(no_trig, since_incl_required(res_f, trig))
        if kind == "eventually":
            return Or(no_trig, Not(since_incl_required(Not(res_f), trig)))
        if kind == "until":
            return Or(no_trig,
                      Implies(since_incl_required(Not(stop_f), trig), res_f))
        if kind == "before":
            return Implies(stop_f,
                           Or(no_trig,
                              And(And(Not(left), Not(trig)),
                                  Not(Y(since_incl_required(Not(res_f), trig))))))
        if kind == "for":
            return Implies(Once(Interval(0, timing.duration), trig),
                           Or(no_trig, res_f))
        if kind == "within":
            return Implies(ypow(timing.duration, And(trig, Not(res_f))),
                           Once(Interval(0, timing.duration - 1),
                                Or(left, res_f)))
    raise ValueError("unknown timing kind %r" % (kind,))


def base_form(timing, cond, res, left, right):
    """Base formula for an interval closed by a ``right`` endpoint; it is
    checked one step past the interval end."""
    core = core_formula(timing, cond, res, left)
    if timing.kind == "eventually":
        return Implies(right, Y(core))
    return Implies(right, Y(since_incl_optional(core, left)))


def base_form_last(timing, cond, res, left):
    """Base formula for an interval that runs to the end of the trace."""
    core = core_formula(timing, cond, res, left)
    if timing.kind == "eventually":
        return Implies(Once(UNBOUNDED, left), core)
    return since_incl_optional(core, left)


def _normalize(req):
    """Rewrite never, and dualize for 'only' scopes."""
    timing, res = req.timing, req.response
    if timing.kind == "never":
        timing, res = Timing("always"), boolexpr.Not(res)
    if req.scope.is_only:
        if timing.kind == "after":
            raise UnsupportedRequirementError(
                "scope '%s' cannot be combined with timing 'after'"
                % req.scope.kind)
        timing, res = dual_timing(timing), boolexpr.Not(res)
    return timing, res


def gen_form(req):
    """Past-time MTL formula equivalent to the requirement's semantics."""
    timing, res = _normalize(req)
    if timing.kind == "after":
        d = timing.duration
        hold_off = Requirement(req.scope, req.condition,
                               Timing("for", duration=d), boolexpr.Not(res))
        deadline = Requirement(req.scope, req.condition,
                               Timing("within", duration=d + 1), res)
        return And(gen_form(hold_off), gen_form(deadline))
    return _scoped_form(req.scope, req.condition, timing, res)


def _scoped_form(scope, cond, timing, res):
    left, right = scope_endpoints(scope)
    base_last = base_form_last(timing, cond, res, left)
    if right is None:
        return base_last
    base = base_form(timing, cond, res, left, right)
    return And(Historically(UNBOUNDED, Or(base, FTP)),
               Implies(since_incl_required(Not(right), left), base_last))


def formula_chain(req):
    """The labelled intermediate formulas behind gen_form, for inspection.

    Returns a list of (label, formula) pairs: trigger (when a condition
    is present), core, base (when the scope has a right endpoint),
    baseLast, and the general formula.  Not defined for the composite
    'after' timing.
    """
    timing, res = _normalize(req)
    if timing.kind == "after":
        raise UnsupportedRequirementError(
            "timing 'after' expands to a conjunction; it has no single chain")
    left, right = scope_endpoints(req.scope)
    chain = []
    if req.condition is not None:
        chain.append(("trigger", trigger_formula(lift(req.condition), left)))
    chain.append(("core", core_formula(timing, req.condition, res, left)))
    if right is not None:
        chain.append(("base", base_form(timing, req.condition, res, left, right)))
    chain.append(("baseLast", base_form_last(timing, req.condition, res, left)))
    chain.append(("general", gen_form(req)))
    return chain
