"""fretsem: structured requirements compiled to past-time MTL, with a
denotational semantics and a differential checker tying the two together."""

from .errors import (EvaluationError, FretsemError, ParseError,
                     UnboundVariableError, UnsupportedRequirementError)
from .fretish import (Requirement, Scope, Timing, parse_bool_expr,
                      parse_requirement, unparse_requirement)
from .harness import (FuzzConfig, TemplateId, Verdict, check_requirement,
                      fuzz_all_templates, gen_trace, instantiate_template,
                      shrink)
from .mtl import (Interval, eval_at, evaluate, expand_sugar, format_formula,
                  parse_formula)
from .semantics import (OLI, bool_sem, dual_timing, first_stop,
                        fret_sem_member, oli_complement, scope_sem,
                        semantics_report, stops, timing_holds, triggers)
from .trace import Trace, load_trace, make_trace
from .translate import gen_form

__version__ = "0.1.0"

__all__ = [
    "EvaluationError", "FretsemError", "ParseError", "UnboundVariableError",
    "UnsupportedRequirementError",
    "Requirement", "Scope", "Timing", "parse_bool_expr", "parse_requirement",
    "unparse_requirement",
    "FuzzConfig", "TemplateId", "Verdict", "check_requirement",
    "fuzz_all_templates", "gen_trace", "instantiate_template", "shrink",
    "Interval", "eval_at", "evaluate", "expand_sugar", "format_formula",
    "parse_formula",
    "OLI", "bool_sem", "dual_timing", "first_stop", "fret_sem_member",
    "oli_complement", "scope_sem", "semantics_report", "stops",
    "timing_holds", "triggers",
    "Trace", "load_trace", "make_trace",
    "gen_form",
]
