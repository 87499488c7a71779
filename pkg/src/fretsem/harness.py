"""Differential checking of the semantics against generated formulas.

For every supported (scope, condition, timing) template this module
instantiates concrete requirements, generates traces under a mix of
strategies, and compares the denotational membership verdict with the
evaluation of the generated formula.  Disagreements are shrunk to small
counterexamples and reported; a correct build reports none.

Each case draws from its own RNG stream derived from (seed, template
index, trial index), so reports are byte-identical across runs and
independent of execution order.
"""

import hashlib
import random
from dataclasses import dataclass

from . import boolexpr
from . import mtl
from .boolexpr import eval_expr
from .errors import UnsupportedRequirementError
from .fretish import (SCOPE_KINDS, TIMING_KINDS, GLOBAL_SCOPE, Requirement,
                      Scope, Timing, unparse_requirement)
from .semantics import fret_sem_member, scope_sem
from .trace import Trace, make_trace, trace_to_json
from .translate import gen_form

BOOL_VARS = ("m", "s", "c", "r")
NUM_VAR = "x"
NUM_RANGE = 4  # numeric variable values in 0..3

STRATEGIES = ("uniform", "sparse", "dense", "edges", "stop_before_trigger")
DEFAULT_STRATEGY_WEIGHTS = (("uniform", 4), ("sparse", 2), ("dense", 2),
                            ("edges", 3), ("stop_before_trigger", 1))
EDGE_VARIANTS = ("never", "start", "end", "one-block", "two-blocks")

CONDITION_KINDS = ("null", "expr")


# --- templates ---------------------------------------------------------

@dataclass(frozen=True)
class TemplateId:
    scope: str
    cond: str
    timing: str

    def __post_init__(self):
        if self.scope not in SCOPE_KINDS:
            raise ValueError("unknown scope kind %r" % (self.scope,))
        if self.cond not in CONDITION_KINDS:
            raise ValueError("condition kind must be 'null' or 'expr'")
        if self.timing not in TIMING_KINDS:
            raise ValueError("unknown timing kind %r" % (self.timing,))

    @property
    def key(self):
        return "%s/%s/%s" % (self.scope, self.cond, self.timing)


def all_templates():
    """All 160 template combinations, in canonical order."""
    return [TemplateId(s, c, t)
            for s in SCOPE_KINDS for c in CONDITION_KINDS for t in TIMING_KINDS]


def template_supported(tid):
    """'only' scopes cannot be combined with the 'after' timing."""
    return not (tid.scope.startswith("only") and tid.timing == "after")


def supported_templates():
    return [tid for tid in all_templates() if template_supported(tid)]


def _random_cond(rng, depth=2):
    if depth == 0 or rng.random() < 0.4:
        pick = rng.randrange(5)
        if pick < 4:
            return boolexpr.Var(BOOL_VARS[pick])
        op = rng.choice(boolexpr.CMP_OPS)
        return boolexpr.Cmp(NUM_VAR, op, rng.randrange(NUM_RANGE))
    shape = rng.randrange(4)
    if shape == 0:
        return boolexpr.Not(_random_cond(rng, depth - 1))
    ctor = (boolexpr.And, boolexpr.Or, boolexpr.Implies)[shape - 1]
    return ctor(_random_cond(rng, depth - 1), _random_cond(rng, depth - 1))


def instantiate_template(tid, rng):
    """Fill a template with concrete fields: mode 'm', stop 's',
    response 'r', a random small condition, durations in 1..3."""
    if not template_supported(tid):
        raise UnsupportedRequirementError(
            "template %s is not supported" % tid.key)
    scope = GLOBAL_SCOPE if tid.scope == "null" else Scope(tid.scope, boolexpr.Var("m"))
    cond = None if tid.cond == "null" else _random_cond(rng)
    if tid.timing in ("within", "for", "after"):
        timing = Timing(tid.timing, duration=rng.choice((1, 2, 3)))
    elif tid.timing in ("until", "before"):
        timing = Timing(tid.timing, stop=boolexpr.Var("s"))
    else:
        timing = Timing(tid.timing)
    return Requirement(scope, cond, timing, boolexpr.Var("r"))


# --- trace generation ----------------------------------------------------

def _random_bits(rng, length, p):
    return [rng.random() < p for _ in range(length)]


def _block_bits(length, blocks):
    bits = [False] * length
    for a, b in blocks:
        for t in range(a, b + 1):
            bits[t] = True
    return bits


def _edge_bits(variant, length, rng):
    if variant == "never":
        return [False] * length
    if variant == "start":
        return _block_bits(length, [(0, rng.randrange(length))])
    if variant == "end":
        return _block_bits(length, [(rng.randrange(length), length - 1)])
    if variant == "one-block" or length < 3:
        a = rng.randrange(length)
        return _block_bits(length, [(a, rng.randrange(a, length))])
    if variant == "two-blocks":
        split = rng.randrange(1, length - 1)
        a = rng.randrange(split)
        c = rng.randrange(split + 1, length)
        return _block_bits(length, [(a, rng.randrange(a, split)),
                                    (c, rng.randrange(c, length))])
    raise ValueError("unknown edges variant %r" % (variant,))


def gen_trace(strategy, length, bool_vars, rng, num_var=None):
    """Deterministic trace generation under a named strategy.

    'uniform', 'sparse', and 'dense' set each Boolean variable with
    probability .5, .1, and .9 per step.  'edges' shapes the first
    variable (the mode) into corner-case layouts: never true, a block
    touching the start or the end, or one/two interior blocks; a variant
    may be fixed with 'edges:<name>'.  'stop_before_trigger' gives the
    second variable (the stop) a rising edge strictly before one on the
    third (the condition).
    """
    if length < 1:
        raise ValueError("trace length must be >= 1")
    name, _, variant = strategy.partition(":")
    columns = {}
    if name in ("uniform", "sparse", "dense"):
        p = {"uniform": 0.5, "sparse": 0.1, "dense": 0.9}[name]
        for v in bool_vars:
            columns[v] = _random_bits(rng, length, p)
    elif name == "edges":
        if not variant:
            variant = EDGE_VARIANTS[rng.randrange(len(EDGE_VARIANTS))]
        columns[bool_vars[0]] = _edge_bits(variant, length, rng)
        for v in bool_vars[1:]:
            columns[v] = _random_bits(rng, length, 0.5)
    elif name == "stop_before_trigger":
        for v in bool_vars:
            columns[v] = _random_bits(rng, length, 0.5)
        if length >= 2 and len(bool_vars) >= 3:
            i = rng.randrange(length - 1)
            j = rng.randrange(i + 1, length)
            columns[bool_vars[1]] = _block_bits(
                length, [(i, rng.randrange(i, length))])
            columns[bool_vars[2]] = _block_bits(
                length, [(j, rng.randrange(j, length))])
    else:
        raise ValueError("unknown strategy %r" % (strategy,))
    states = []
    for t in range(length):
        state = {v: columns[v][t] for v in bool_vars}
        if num_var is not None:
            state[num_var] = rng.randrange(NUM_RANGE)
        states.append(state)
    return make_trace(states)


def exhaustive_traces(max_len, var_names):
    """Every trace of length 1..max_len over the given Boolean variables."""
    width = len(var_names)
    for length in range(1, max_len + 1):
        for code in range(1 << (width * length)):
            states = []
            for t in range(length):
                chunk = code >> (t * width)
                states.append({v: bool((chunk >> i) & 1)
                               for i, v in enumerate(var_names)})
            yield make_trace(states)


# --- differential checking -----------------------------------------------

@dataclass(frozen=True)
class Verdict:
    requirement: Requirement
    trace: Trace
    sem_value: bool
    mtl_value: bool
    scope_sem: object
    policy: str

    @property
    def agree(self):
        return self.sem_value == self.mtl_value


def check_requirement(req, trace, policy="vacuous"):
    """Run both sides on one case: the denotational membership verdict
    and the generated formula at the end of the trace."""
    sem_value = fret_sem_member(req, trace, policy)
    mtl_value = mtl.evaluate(gen_form(req), trace)
    return Verdict(req, trace, sem_value, mtl_value,
                   scope_sem(req.scope, trace), policy)


def _with_value(steps, t, name, value):
    changed = dict(steps[t])
    changed[name] = value
    return Trace(steps[:t] + (changed,) + steps[t + 1:])


def _shrink_candidates(trace, bool_vars):
    # Every candidate is strictly smaller under (length, true bits,
    # numeric mass), so greedy acceptance terminates.
    steps = trace.steps
    n = len(steps)
    if n > 1:
        yield Trace(steps[1:])
        yield Trace(steps[:-1])
        for i in range(1, n - 1):
            yield Trace(steps[:i] + steps[i + 1:])
    for t in range(n):
        for name, value in steps[t].items():
            if isinstance(value, bool):
                if name in bool_vars and value:
                    yield _with_value(steps, t, name, False)
            elif value != 0:
                yield _with_value(steps, t, name, 0)


def shrink(verdict, bool_vars=BOOL_VARS):
    """Greedily minimize a disagreeing case; agreeing verdicts pass through."""
    if verdict.agree:
        return verdict
    req, policy = verdict.requirement, verdict.policy
    current = verdict.trace
    improved = True
    while improved:
        improved = False
        for candidate in _shrink_candidates(current, bool_vars):
            if not check_requirement(req, candidate, policy).agree:
                current = candidate
                improved = True
                break
    return check_requirement(req, current, policy)


# --- independent brute-force evaluator -------------------------------------

def brute_eval_at(phi, trace, t):
    """Direct recursive transcription of the satisfaction relation, with
    explicit quantifier loops.  Exponential; used only as an oracle for
    the production evaluator."""
    if isinstance(phi, mtl.TrueFormula):
        return True
    if isinstance(phi, mtl.FalseFormula):
        return False
    if isinstance(phi, mtl.Atom):
        return eval_expr(phi.expr, trace.steps[t], index=t)
    if isinstance(phi, mtl.Not):
        return not brute_eval_at(phi.sub, trace, t)
    if isinstance(phi, mtl.And):
        return brute_eval_at(phi.left, trace, t) and brute_eval_at(phi.right, trace, t)
    if isinstance(phi, mtl.Or):
        return brute_eval_at(phi.left, trace, t) or brute_eval_at(phi.right, trace, t)
    if isinstance(phi, mtl.Implies):
        return (not brute_eval_at(phi.left, trace, t)) or brute_eval_at(phi.right, trace, t)
    if isinstance(phi, mtl.Y):
        return t != 0 and brute_eval_at(phi.sub, trace, t - 1)
    if isinstance(phi, mtl.Once):
        return any(phi.interval.contains(t - t0) and brute_eval_at(phi.sub, trace, t0)
                   for t0 in range(t + 1))
    if isinstance(phi, mtl.Historically):
        return all(brute_eval_at(phi.sub, trace, t0)
                   for t0 in range(t + 1) if phi.interval.contains(t - t0))
    if isinstance(phi, mtl.Since):
        for t0 in range(t + 1):
            if not phi.interval.contains(t - t0):
                continue
            if not brute_eval_at(phi.right, trace, t0):
                continue
            if all(brute_eval_at(phi.left, trace, t1) for t1 in range(t0 + 1, t + 1)):
                return True
        return False
    raise TypeError("not a formula: %r" % (phi,))


def random_formula(rng, var_names, depth):
    """Random formula over Boolean variables, all operators reachable."""
    if depth == 0 or rng.random() < 0.3:
        pick = rng.randrange(len(var_names) + 2)
        if pick < len(var_names):
            return mtl.atom(var_names[pick])
        return mtl.TRUE if pick == len(var_names) else mtl.FALSE
    shape = rng.randrange(8)
    if shape >= 4:
        lo = rng.randrange(4)
        hi = None if rng.random() < 0.3 else lo + rng.randrange(4)
        interval = mtl.Interval(lo, hi)
    if shape == 0:
        return mtl.Not(random_formula(rng, var_names, depth - 1))
    if shape == 1:
        return mtl.And(random_formula(rng, var_names, depth - 1),
                       random_formula(rng, var_names, depth - 1))
    if shape == 2:
        return mtl.Or(random_formula(rng, var_names, depth - 1),
                      random_formula(rng, var_names, depth - 1))
    if shape == 3:
        return mtl.Implies(random_formula(rng, var_names, depth - 1),
                           random_formula(rng, var_names, depth - 1))
    if shape == 4:
        return mtl.Y(random_formula(rng, var_names, depth - 1))
    if shape == 5:
        return mtl.Once(interval, random_formula(rng, var_names, depth - 1))
    if shape == 6:
        return mtl.Historically(interval, random_formula(rng, var_names, depth - 1))
    return mtl.Since(interval, random_formula(rng, var_names, depth - 1),
                     random_formula(rng, var_names, depth - 1))


def random_bool_trace(rng, var_names, length):
    return make_trace([{v: rng.random() < 0.5 for v in var_names}
                       for _ in range(length)])


def brute_cost(phi, length):
    """Worst-case recursive call count of brute_eval_at; nested since
    operators are exponential and must be budgeted."""
    if isinstance(phi, (mtl.Not, mtl.Y)):
        return 1 + brute_cost(phi.sub, length)
    if isinstance(phi, (mtl.And, mtl.Or, mtl.Implies)):
        return 1 + brute_cost(phi.left, length) + brute_cost(phi.right, length)
    if isinstance(phi, (mtl.Once, mtl.Historically)):
        return 1 + length * brute_cost(phi.sub, length)
    if isinstance(phi, mtl.Since):
        return 1 + length * (brute_cost(phi.right, length)
                             + length * brute_cost(phi.left, length))
    return 1


_BRUTE_BUDGET = 200_000


def oracle_self_check(cases, seed=0):
    """Cross-check the production evaluator against brute_eval_at on
    random (formula, trace) pairs, at every time index.  Raises on any
    mismatch; returns the number of pairs checked."""
    rng = random.Random(seed)
    names = ("p", "q")
    for i in range(cases):
        length = rng.randrange(1, 9)
        while True:
            phi = random_formula(rng, names, depth=rng.randrange(1, 5))
            if length * brute_cost(phi, length) <= _BRUTE_BUDGET:
                break
        trace = random_bool_trace(rng, names, length)
        for t in range(len(trace)):
            fast = mtl.eval_at(phi, trace, t)
            slow = brute_eval_at(phi, trace, t)
            if fast != slow:
                raise AssertionError(
                    "evaluator mismatch on case %d at t=%d: %s"
                    % (i, t, mtl.format_formula(phi)))
    return cases


# --- fuzz campaign ----------------------------------------------------------

@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    traces_per_template: int = 65
    max_trace_len: int = 25
    bool_vars: tuple = BOOL_VARS
    num_var: str = NUM_VAR
    strategy_weights: tuple = DEFAULT_STRATEGY_WEIGHTS
    policy: str = "vacuous"
    self_check_cases: int = 1000

    def __post_init__(self):
        if self.traces_per_template < 1:
            raise ValueError("traces_per_template must be >= 1")
        if self.max_trace_len < 1:
            raise ValueError("max_trace_len must be >= 1")
        if self.policy not in ("vacuous", "literal"):
            raise ValueError("policy must be 'vacuous' or 'literal'")
        for name, weight in self.strategy_weights:
            if name not in STRATEGIES:
                raise ValueError("unknown strategy %r" % (name,))
            if weight < 0:
                raise ValueError("strategy weights must be non-negative")


@dataclass
class Report:
    config: dict
    totals: dict
    per_template: list
    counterexamples: list
    self_check: dict

    @property
    def disagreements(self):
        return self.totals["disagreements"]


MAX_STORED_COUNTEREXAMPLES = 25


def case_rng(seed, template_index, trial):
    """Per-case RNG stream; splittable and platform-independent."""
    digest = hashlib.sha256(
        ("%d:%d:%d" % (seed, template_index, trial)).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _run_case(tid, template_index, trial, cfg, strategy_names, strategy_weights):
    rng = case_rng(cfg.seed, template_index, trial)
    strategy = rng.choices(strategy_names, weights=strategy_weights)[0]
    length = rng.randint(1, cfg.max_trace_len)
    req = instantiate_template(tid, rng)
    trace = gen_trace(strategy, length, cfg.bool_vars, rng, num_var=cfg.num_var)
    return check_requirement(req, trace, cfg.policy)


def fuzz_all_templates(cfg):
    """Run the full differential campaign described by ``cfg``.

    Cases touch only immutable inputs and their own RNG stream; results
    are assembled in (template, trial) order, so the report does not
    depend on how the cases are scheduled.
    """
    self_check_n = oracle_self_check(cfg.self_check_cases, seed=cfg.seed)
    strategy_names = [name for name, _ in cfg.strategy_weights]
    strategy_weights = [w for _, w in cfg.strategy_weights]
    templates = supported_templates()
    per_template = []
    counterexamples = []
    total_cases = 0
    total_disagreements = 0
    for template_index, tid in enumerate(templates):
        disagreements = 0
        for trial in range(cfg.traces_per_template):
            verdict = _run_case(tid, template_index, trial, cfg,
                                strategy_names, strategy_weights)
            total_cases += 1
            if not verdict.agree:
                disagreements += 1
                total_disagreements += 1
                if len(counterexamples) < MAX_STORED_COUNTEREXAMPLES:
                    small = shrink(verdict, cfg.bool_vars)
                    counterexamples.append({
                        "template": tid.key,
                        "requirement_text": unparse_requirement(small.requirement),
                        "trace": trace_to_json(
                            small.trace,
                            list(cfg.bool_vars) + [cfg.num_var]),
                        "sem": small.sem_value,
                        "mtl": small.mtl_value,
                        "scope_sem": [list(iv) for iv in small.scope_sem],
                    })
        per_template.append({"id": tid.key,
                             "cases": cfg.traces_per_template,
                             "disagreements": disagreements})
    config = {
        "seed": cfg.seed,
        "traces_per_template": cfg.traces_per_template,
        "max_trace_len": cfg.max_trace_len,
        "policy": cfg.policy,
        "bool_vars": list(cfg.bool_vars),
        "num_var": cfg.num_var,
        "strategy_weights": {name: w for name, w in cfg.strategy_weights},
    }
    totals = {"templates": len(templates),
              "cases": total_cases,
              "disagreements": total_disagreements}
    return Report(config=config, totals=totals, per_template=per_template,
                  counterexamples=counterexamples,
                  self_check={"cases": self_check_n, "ok": True})
