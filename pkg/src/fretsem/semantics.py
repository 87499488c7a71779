"""Denotational semantics of requirements over interval lists.

The carrier is the OLI: an ordered list of disjoint, non-adjacent closed
intervals of time indices, encoding exactly where a Boolean expression
holds along a trace.  Scope semantics selects the intervals where a
requirement is enforced; within each interval the timing field is a
membership test driven by trigger and stop indices.

``stops`` returns every index in the interval at which the stop
expression holds, and ``first_stop`` the first such index at or after a
trigger.  (Trigger sets, by contrast, contain only rising edges and the
interval start.)
"""

from dataclasses import dataclass

from . import boolexpr
from .boolexpr import eval_expr, format_expr
from .errors import UnsupportedRequirementError
from .fretish import Timing


@dataclass(frozen=True)
class OLI:
    """Ordered list of disjoint, non-adjacent closed intervals."""

    intervals: tuple

    def __post_init__(self):
        prev_hi = None
        for pair in self.intervals:
            a, b = pair
            if a < 0 or b < a:
                raise ValueError("malformed interval [%d,%d]" % (a, b))
            if prev_hi is not None and a <= prev_hi + 1:
                raise ValueError("intervals must be ordered and non-adjacent")
            prev_hi = b

    @property
    def empty(self):
        return not self.intervals

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    @property
    def lb(self):
        return self.intervals[0][0]

    @property
    def ub(self):
        return self.intervals[-1][1]

    def bounded_by(self, n):
        return self.empty or self.ub <= n

    def __contains__(self, x):
        for a, b in self.intervals:
            if a <= x <= b:
                return True
            if x < a:
                return False
        return False


EMPTY_OLI = OLI(())


def oli_from_indices(indices):
    """Merge a set of indices into maximal intervals."""
    out = []
    for x in sorted(set(indices)):
        if out and x == out[-1][1] + 1:
            out[-1][1] = x
        else:
            out.append([x, x])
    return OLI(tuple((a, b) for a, b in out))


def bool_sem(expr, trace):
    """OLI of the indices at which ``expr`` holds in ``trace``."""
    return oli_from_indices(
        t for t in range(len(trace))
        if eval_expr(expr, trace.steps[t], index=t))


def oli_complement(oli, n):
    """Indices in [0, n] not covered by ``oli``, as an OLI."""
    if not oli.bounded_by(n):
        raise ValueError("interval list exceeds bound %d" % n)
    out = []
    next_free = 0
    for a, b in oli:
        if a > next_free:
            out.append((next_free, a - 1))
        next_free = b + 1
    if next_free <= n:
        out.append((next_free, n))
    return OLI(tuple(out))


def scope_sem(scope, trace):
    """Intervals of ``trace`` on which the scope enforces the requirement.

    A mode that is never entered leaves 'before' covering the whole
    trace, by convention; the other cases follow the interval and
    complement structure directly.
    """
    n = trace.last
    whole = OLI(((0, n),))
    if scope.kind == "null":
        return whole
    mode_int = bool_sem(scope.mode, trace)
    if scope.kind == "in":
        return mode_int
    if scope.kind in ("notin", "onlyin"):
        return oli_complement(mode_int, n)
    if scope.kind == "after":
        if mode_int.empty or mode_int.intervals[0][1] == n:
            return EMPTY_OLI
        return OLI(((mode_int.intervals[0][1] + 1, n),))
    if scope.kind == "before":
        if mode_int.empty:
            return whole
        first_lb = mode_int.intervals[0][0]
        if first_lb == 0:
            return EMPTY_OLI
        return OLI(((0, first_lb - 1),))
    if scope.kind == "onlyafter":
        if mode_int.empty:
            return whole
        return OLI(((0, mode_int.intervals[0][1]),))
    if scope.kind == "onlybefore":
        if mode_int.empty:
            return EMPTY_OLI
        return OLI(((mode_int.intervals[0][0], n),))
    raise ValueError("unknown scope kind %r" % (scope.kind,))


def _check_interval(interval, trace):
    lo, hi = interval
    if not (0 <= lo <= hi <= trace.last):
        raise ValueError("interval [%d,%d] is not within the trace (n=%d)"
                         % (lo, hi, trace.last))
    return lo, hi


def triggers(cond, trace, interval):
    """Indices in ``interval`` at which the requirement is (re)triggered:
    rising edges of ``cond`` plus the interval start when ``cond`` holds
    there; just the interval start when ``cond`` is omitted (None)."""
    lo, hi = _check_interval(interval, trace)
    if cond is None:
        return {lo}
    out = set()
    for a, b in bool_sem(cond, trace):
        if a <= hi and b >= lo:
            out.add(max(a, lo))
    return out


def stops(stop, trace, interval):
    """Indices in ``interval`` at which ``stop`` holds."""
    lo, hi = _check_interval(interval, trace)
    return {t for t in range(lo, hi + 1)
            if eval_expr(stop, trace.steps[t], index=t)}


def first_stop(stop, t, trace, interval):
    """First index at or after ``t`` where ``stop`` holds within
    ``interval``; one past the interval end when there is none."""
    lo, hi = _check_interval(interval, trace)
    candidates = [s for s in stops(stop, trace, interval) if s >= t]
    return min(candidates) if candidates else hi + 1


def timing_holds(timing, cond, res, trace, interval):
    """Does ``interval`` satisfy the timing obligation?

    Trigger-free intervals satisfy every timing.
    """
    if timing.kind == "never":
        return timing_holds(Timing("always"), cond, boolexpr.Not(res),
                            trace, interval)
    if timing.kind == "after":
        d = timing.duration
        return (timing_holds(Timing("for", duration=d), cond,
                             boolexpr.Not(res), trace, interval)
                and timing_holds(Timing("within", duration=d + 1), cond,
                                 res, trace, interval))
    lo, hi = _check_interval(interval, trace)
    trig = triggers(cond, trace, interval)
    if not trig:
        return True
    res_int = bool_sem(res, trace)
    kind = timing.kind
    if kind == "immediately":
        return all(t in res_int for t in trig)
    if kind == "next":
        return all(t + 1 in res_int for t in trig if lo <= t + 1 <= hi)
    if kind == "always":
        return all(j in res_int for j in range(min(trig), hi + 1))
    if kind == "eventually":
        return any(j in res_int for j in range(max(trig), hi + 1))
    if kind == "within":
        d = timing.duration
        for t in trig:
            if lo <= t + d <= hi and not any(
                    t + k in res_int for k in range(d + 1) if t + k <= hi):
                return False
        return True
    if kind == "for":
        d = timing.duration
        for t in trig:
            for k in range(d + 1):
                if lo <= t + k <= hi and t + k not in res_int:
                    return False
        return True
    if kind == "until":
        for t in trig:
            fs = first_stop(timing.stop, t, trace, interval)
            if not all(x in res_int for x in range(t, fs)):
                return False
        return True
    if kind == "before":
        stop_set = stops(timing.stop, trace, interval)
        if not stop_set:
            return True
        for t in trig:
            fs = first_stop(timing.stop, t, trace, interval)
            if fs != hi + 1 and not any(x in res_int for x in range(t, fs)):
                return False
        return True
    raise ValueError("unknown timing kind %r" % (kind,))


_DUAL = {"always": "eventually", "eventually": "always",
         "within": "for", "for": "within",
         "before": "until", "until": "before",
         "immediately": "immediately", "next": "next"}


def dual_timing(timing):
    """The timing enforced outside an 'only' scope frame."""
    kind = _DUAL.get(timing.kind)
    if kind is None:
        raise UnsupportedRequirementError(
            "timing '%s' has no dual" % timing.kind)
    return Timing(kind, duration=timing.duration, stop=timing.stop)


def _effective_timing(req):
    """Normalized (timing, response) pair after never-rewriting and the
    'only'-scope dualization."""
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


def fret_sem_member(req, trace, policy="vacuous"):
    """Is ``trace`` a member of the requirement's semantics?

    ``policy`` controls the verdict when the scope selects no intervals:
    'vacuous' accepts the trace, 'literal' rejects it.
    """
    if policy not in ("vacuous", "literal"):
        raise ValueError("policy must be 'vacuous' or 'literal', got %r" % (policy,))
    timing, res = _effective_timing(req)
    sc = scope_sem(req.scope, trace)
    if sc.empty:
        return policy == "vacuous"
    return all(timing_holds(timing, req.condition, res, trace, iv)
               for iv in sc)


# --- diagnostic dump --------------------------------------------------------

def format_oli(oli):
    if oli.empty:
        return "(empty)"
    return " ".join("[%d,%d]" % (a, b) for a, b in oli)


def _format_index_set(indices):
    return "{%s}" % ", ".join(str(i) for i in sorted(indices))


_SCOPE_LABELS = {
    "in": "in", "notin": "notin", "before": "before", "after": "after",
    "onlyafter": "only after", "onlybefore": "only before",
    "onlyin": "only in",
}


def scope_label(scope):
    if scope.kind == "null":
        return "null"
    return "%s %s" % (_SCOPE_LABELS[scope.kind], format_expr(scope.mode))


def semantics_report(req, trace, policy="vacuous"):
    """Line-oriented explanation of the membership verdict.

    Returns (lines, member).  The dump names each OLI the verdict is
    built from, then the trigger (and stop) sets per scope interval.
    """
    lines = []
    if req.scope.mode is not None:
        lines.append("mode: %s" % format_oli(bool_sem(req.scope.mode, trace)))
    if req.condition is not None:
        lines.append("cond: %s" % format_oli(bool_sem(req.condition, trace)))
    if req.timing.stop is not None:
        lines.append("stop: %s" % format_oli(bool_sem(req.timing.stop, trace)))
    lines.append("res: %s" % format_oli(bool_sem(req.response, trace)))
    sc = scope_sem(req.scope, trace)
    lines.append("scope(%s): %s" % (scope_label(req.scope), format_oli(sc)))
    for iv in sc:
        lines.append("triggers(I=[%d,%d]): %s"
                     % (iv[0], iv[1],
                        _format_index_set(triggers(req.condition, trace, iv))))
        if req.timing.stop is not None:
            lines.append("stops(I=[%d,%d]): %s"
                         % (iv[0], iv[1],
                            _format_index_set(stops(req.timing.stop, trace, iv))))
    member = fret_sem_member(req, trace, policy)
    verdict = "true" if member else "false"
    if sc.empty:
        verdict += " (empty scope)"
    lines.append("member: %s" % verdict)
    return lines, member
