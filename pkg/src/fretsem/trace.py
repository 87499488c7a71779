"""Finite traces of variable states.

A trace is a non-empty sequence of states indexed 0..n; each state maps
variable names to Boolean or exact-rational values.  The JSON file form
declares its variables up front so binding gaps are caught at load time:

    {"vars": ["m", "r"], "steps": [{"m": true, "r": false}, ...]}
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError


def _check_value(name, value, where):
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, float):
        # Floats only show up from hand-built states; files parse exactly.
        return Fraction(value).limit_denominator(10**12)
    raise ParseError("variable '%s' has non-Boolean, non-numeric value %r %s"
                     % (name, value, where))


@dataclass(frozen=True)
class Trace:
    steps: tuple

    def __post_init__(self):
        if len(self.steps) == 0:
            raise ValueError("a trace must contain at least one state")

    def __len__(self):
        return len(self.steps)

    @property
    def last(self):
        """Index of the final state (n)."""
        return len(self.steps) - 1

    def state(self, t):
        return self.steps[t]


def make_trace(states):
    """Build a Trace from an iterable of dict states."""
    return Trace(tuple(dict(s) for s in states))


def trace_from_json(data, source="<trace>"):
    """Validate and convert the decoded JSON trace-file object."""
    if not isinstance(data, dict) or "vars" not in data or "steps" not in data:
        raise ParseError("trace file must be an object with 'vars' and 'steps' (%s)" % source)
    names = data["vars"]
    if (not isinstance(names, list) or not names
            or any(not isinstance(v, str) for v in names)):
        raise ParseError("'vars' must be a non-empty list of names (%s)" % source)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable declaration in 'vars' (%s)" % source)
    steps = data["steps"]
    if not isinstance(steps, list) or not steps:
        raise ParseError("'steps' must be a non-empty list of states (%s)" % source)
    out = []
    for i, step in enumerate(steps):
        if not isinstance(step, dict):
            raise ParseError("step %d is not an object (%s)" % (i, source))
        missing = [v for v in names if v not in step]
        if missing:
            raise ParseError("step %d does not bind %s (%s)"
                             % (i, ", ".join(missing), source))
        extra = [k for k in step if k not in names]
        if extra:
            raise ParseError("step %d binds undeclared %s (%s)"
                             % (i, ", ".join(extra), source))
        out.append({v: _check_value(v, step[v], "in step %d of %s" % (i, source))
                    for v in names})
    return Trace(tuple(out))


def load_trace(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON in %s: %s" % (path, exc)) from None
    return trace_from_json(data, source=str(path))


def trace_to_json(trace, var_names=None):
    """Inverse of trace_from_json, suitable for reports and golden files."""
    names = list(var_names) if var_names is not None else sorted(trace.steps[0])
    steps = []
    for step in trace.steps:
        enc = {}
        for v in names:
            value = step[v]
            if isinstance(value, Fraction):
                value = (value.numerator if value.denominator == 1
                         else str(value))
            enc[v] = value
        steps.append(enc)
    return {"vars": names, "steps": steps}
