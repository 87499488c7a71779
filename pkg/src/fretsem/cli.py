"""Command-line interface.

Exit codes are a stable contract: 0 success (or verdict true), 1 verdict
false or fuzz disagreement, 2 parse/validation error, 3 evaluation error.
"""

import argparse
import sys

from .errors import EvaluationError, ParseError, UnsupportedRequirementError
from .fretish import parse_requirement, read_requirements
from .harness import FuzzConfig, fuzz_all_templates
from .mtl import eval_at, format_formula, parse_formula
from .report import write_reports
from .semantics import semantics_report
from .trace import load_trace
from .translate import gen_form


def _requirement_from_args(args):
    if getattr(args, "requirement", None) is not None:
        return parse_requirement(args.requirement)
    reqs = read_requirements(args.file)
    if len(reqs) != 1:
        raise ParseError("expected exactly one requirement in %s, found %d"
                         % (args.file, len(reqs)))
    return reqs[0]


def cmd_translate(args):
    phi = gen_form(_requirement_from_args(args))
    print(format_formula(phi, fold_sugar=not args.expand_sugar))
    return 0


def cmd_eval(args):
    if args.requirement is not None:
        phi = gen_form(parse_requirement(args.requirement))
    else:
        phi = parse_formula(args.formula)
    trace = load_trace(args.trace)
    t = trace.last if args.at is None else args.at
    value = eval_at(phi, trace, t)
    print("true" if value else "false")
    return 0 if value else 1


def cmd_semantics(args):
    req = parse_requirement(args.requirement)
    trace = load_trace(args.trace)
    lines, member = semantics_report(req, trace, policy=args.policy)
    for line in lines:
        print(line)
    return 0 if member else 1


def cmd_fuzz(args):
    cfg = FuzzConfig(seed=args.seed,
                     traces_per_template=args.cases,
                     max_trace_len=args.max_len,
                     policy=args.policy)
    report = fuzz_all_templates(cfg)
    write_reports(report, args.out)
    print("templates=%d cases=%d disagreements=%d report=%s"
          % (report.totals["templates"], report.totals["cases"],
             report.totals["disagreements"], args.out))
    return 0 if report.totals["disagreements"] == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fretsem",
        description="Compile structured requirements to past-time MTL and "
                    "check the translation against the interval semantics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="print the formula for a requirement")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-r", "--requirement", help="requirement text")
    src.add_argument("-f", "--file", help="file holding one requirement")
    p.add_argument("--expand-sugar", action="store_true",
                   help="print fully expanded operators instead of "
                        "SI/SR/Y^m/ftp macros")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("eval", help="evaluate a requirement or formula on a trace")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-r", "--requirement", help="requirement text")
    src.add_argument("--formula", help="formula text")
    p.add_argument("--trace", required=True, help="trace JSON file")
    p.add_argument("--at", type=int, default=None,
                   help="time index (default: end of trace)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("semantics",
                       help="explain the membership verdict for a requirement")
    p.add_argument("-r", "--requirement", required=True, help="requirement text")
    p.add_argument("--trace", required=True, help="trace JSON file")
    p.add_argument("--policy", choices=("vacuous", "literal"), default="vacuous",
                   help="verdict when the scope selects no intervals")
    p.set_defaults(func=cmd_semantics)

    p = sub.add_parser("fuzz", help="run the differential campaign")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=65,
                   help="traces per template (default 65)")
    p.add_argument("--max-len", type=int, default=25,
                   help="maximum trace length (default 25)")
    p.add_argument("--policy", choices=("vacuous", "literal"), default="vacuous")
    p.add_argument("--out", default="fuzz-report",
                   help="output directory (default ./fuzz-report)")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsupportedRequirementError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except EvaluationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
