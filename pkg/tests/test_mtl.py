import random
from fractions import Fraction

import pytest

from fretsem import boolexpr as be
from fretsem.errors import EvaluationError, ParseError, UnboundVariableError
from fretsem.harness import brute_eval_at, random_formula
from fretsem.mtl import (FALSE, TRUE, UNBOUNDED, And, Atom, Historically,
                         Implies, Interval, Not, Once, Or, Since, Y, atom,
                         eval_at, evaluate, expand_sugar, format_formula,
                         lift, parse_formula, since_incl_optional,
                         since_incl_required, ypow)

from helpers import mk

P = atom("p")
Q = atom("q")


class TestInterval:
    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            Interval(-1, 2)
        with pytest.raises(ValueError):
            Interval(3, 2)

    def test_membership(self):
        i = Interval(1, 3)
        assert not i.contains(0)
        assert i.contains(1) and i.contains(3)
        assert not i.contains(4)
        assert UNBOUNDED.contains(10 ** 9)


class TestEvaluation:
    def test_previous_is_false_at_time_zero(self):
        assert eval_at(Y(TRUE), mk(p="00"), 0) is False

    def test_once_unbounded_reaches_back_to_start(self):
        assert eval_at(Once(UNBOUNDED, P), mk(p="100"), 2) is True

    def test_since_unbounded(self):
        trace = mk(p="011", q="100")
        assert eval_at(Since(UNBOUNDED, P, Q), trace, 2) is True

    def test_since_with_point_interval(self):
        trace = mk(p="011", q="100")
        assert eval_at(Since(Interval(2, 2), P, Q), trace, 1) is False

    def test_evaluate_checks_the_final_state(self):
        assert evaluate(TRUE, mk(p="0")) is True
        assert evaluate(Y(TRUE), mk(p="1")) is False

    def test_historically_unbounded(self):
        assert evaluate(Historically(UNBOUNDED, P), mk(p="11")) is True
        assert evaluate(Historically(UNBOUNDED, P), mk(p="01")) is False

    def test_bounded_once_window(self):
        trace = mk(p="10000")
        assert eval_at(Once(Interval(0, 2), P), trace, 2) is True
        assert eval_at(Once(Interval(0, 2), P), trace, 3) is False
        assert eval_at(Once(Interval(4, 4), P), trace, 4) is True

    def test_unbound_variable_names_variable_and_index(self):
        with pytest.raises(UnboundVariableError) as err:
            evaluate(atom("z"), mk(p="10"))
        assert "'z'" in str(err.value)
        assert "index 0" in str(err.value)

    def test_time_index_out_of_range(self):
        with pytest.raises(EvaluationError):
            eval_at(TRUE, mk(p="10"), 2)
        with pytest.raises(EvaluationError):
            eval_at(TRUE, mk(p="10"), -1)

    def test_connectives(self):
        trace = mk(p="1", q="0")
        assert evaluate(And(P, Not(Q)), trace) is True
        assert evaluate(Or(Q, Q), trace) is False
        assert evaluate(Implies(P, Q), trace) is False
        assert evaluate(Implies(Q, P), trace) is True

    def test_comparison_atoms_use_exact_arithmetic(self):
        trace = mk(x=[Fraction(5, 2), 3])
        half_cmp = Atom(be.Cmp("x", "<=", Fraction(5, 2)))
        assert eval_at(half_cmp, trace, 0) is True
        assert eval_at(half_cmp, trace, 1) is False


class TestDerivedOperators:
    def test_ypow_expands_to_a_point_interval(self):
        assert ypow(3, P) == Once(Interval(3, 3), P)
        assert expand_sugar("ypow", 3, P) == ypow(3, P)

    def test_ypow_requires_positive_count(self):
        with pytest.raises(ValueError):
            ypow(0, P)

    def test_since_inclusive_required_expansion(self):
        assert expand_sugar("since_incl_required", P, Q) == \
            Since(UNBOUNDED, P, And(P, Q))

    def test_since_inclusive_optional_expansion(self):
        assert since_incl_optional(P, Q) == \
            Implies(Once(UNBOUNDED, Q), Since(UNBOUNDED, P, And(P, Q)))

    def test_unknown_sugar_kind(self):
        with pytest.raises(ValueError):
            expand_sugar("bogus", P, Q)

    def test_optional_form_is_vacuous_when_anchor_never_occurs(self):
        trace = mk(p="0101", q="0000")
        phi = since_incl_optional(P, Q)
        assert all(eval_at(phi, trace, t) for t in range(len(trace)))

    def test_ypow_means_exactly_m_steps_ago(self):
        rng = random.Random(1)
        for _ in range(200):
            m = rng.randint(1, 4)
            trace = mk(p="".join(rng.choice("01") for _ in range(rng.randint(1, 8))))
            phi = ypow(m, P)
            for t in range(len(trace)):
                expected = t >= m and eval_at(P, trace, t - m)
                assert eval_at(phi, trace, t) == expected


class TestOnceHistoricallyDuality:
    def test_exhaustive_single_variable(self):
        """Once(I, p) and !Historically(I, !p) coincide at every index of
        every trace of length <= 8 over one variable."""
        intervals = [UNBOUNDED, Interval(0, 2), Interval(1, 3), Interval(2, 2)]
        for length in range(1, 9):
            for code in range(1 << length):
                trace = mk(p=format(code, "0%db" % length))
                for interval in intervals:
                    once = Once(interval, P)
                    dual = Not(Historically(interval, Not(P)))
                    for t in range(length):
                        assert eval_at(once, trace, t) == eval_at(dual, trace, t)

    def test_random_formulas(self):
        rng = random.Random(2)
        for _ in range(150):
            sub = random_formula(rng, ("p", "q"), depth=2)
            lo = rng.randrange(3)
            interval = Interval(lo, None if rng.random() < .3 else lo + rng.randrange(3))
            trace = mk(p="".join(rng.choice("01") for _ in range(6)),
                       q="".join(rng.choice("01") for _ in range(6)))
            for t in range(len(trace)):
                assert eval_at(Once(interval, sub), trace, t) == \
                    eval_at(Not(Historically(interval, Not(sub))), trace, t)


class TestNonTemporalAgreement:
    def test_lifted_expressions_match_direct_evaluation(self):
        rng = random.Random(3)
        from fretsem.harness import _random_cond, gen_trace, BOOL_VARS
        for _ in range(200):
            expr = _random_cond(rng)
            trace = gen_trace("uniform", rng.randint(1, 8), BOOL_VARS, rng,
                              num_var="x")
            t = rng.randrange(len(trace))
            assert eval_at(lift(expr), trace, t) == \
                be.eval_expr(expr, trace.steps[t])


CANONICAL_CASES = [
    (Y(P), "Y p"),
    (Once(Interval(0, 2), Or(P, Q)), "O[0,2] (p | q)"),
    (Since(UNBOUNDED, P, Q), "(p S q)"),
    (And(P, Not(Q)), "p & !q"),
    (TRUE, "TRUE"),
    (FALSE, "FALSE"),
    (Implies(P, Implies(Q, P)), "p -> q -> p"),
    (Implies(Implies(P, Q), P), "(p -> q) -> p"),
    (And(And(P, Q), P), "p & q & p"),
    (And(P, And(Q, P)), "p & (q & p)"),
    (Or(And(P, Q), Q), "p & q | q"),
    (And(Or(P, Q), Q), "(p | q) & q"),
    (Not(And(P, Q)), "!(p & q)"),
    (Historically(Interval(1, 4), Not(P)), "H[1,4] !p"),
    (Since(Interval(2, 5), P, Q), "(p S[2,5] q)"),
    (Once(Interval(2, None), P), "O[2,inf] p"),
    (Y(Atom(be.Cmp("x", "<=", 250))), "Y x <= 250"),
]


class TestCanonicalText:
    @pytest.mark.parametrize("phi,text", CANONICAL_CASES)
    def test_format(self, phi, text):
        assert format_formula(phi) == text

    @pytest.mark.parametrize("phi,text", CANONICAL_CASES)
    def test_parse_inverts_format(self, phi, text):
        assert parse_formula(text) == phi

    def test_macro_display(self):
        assert format_formula(since_incl_optional(P, Not(Y(TRUE))),
                              fold_sugar=True) == "SI(p, ftp)"
        assert format_formula(since_incl_required(Not(P), Q),
                              fold_sugar=True) == "SR(!p, q)"
        assert format_formula(ypow(3, P), fold_sugar=True) == "Y^3 p"

    def test_macro_text_parses_back(self):
        assert parse_formula("SI(p, ftp)") == since_incl_optional(P, Not(Y(TRUE)))
        assert parse_formula("SR(!p, q)") == since_incl_required(Not(P), Q)
        assert parse_formula("Y^3 p") == ypow(3, P)

    def test_roundtrip_random_formulas(self):
        rng = random.Random(4)
        for _ in range(400):
            phi = random_formula(rng, ("p", "q"), depth=rng.randrange(6))
            assert parse_formula(format_formula(phi)) == phi
            assert parse_formula(format_formula(phi, fold_sugar=True)) == phi

    def test_comparisons_roundtrip(self):
        text = "x <= 250 & y <= 50"
        phi = parse_formula(text)
        assert phi == And(Atom(be.Cmp("x", "<=", 250)),
                          Atom(be.Cmp("y", "<=", 50)))
        assert format_formula(phi) == text

    def test_fraction_literals_roundtrip(self):
        phi = parse_formula("x < 5/2")
        assert phi == Atom(be.Cmp("x", "<", Fraction(5, 2)))
        assert format_formula(phi) == "x < 5/2"

    def test_parse_errors_carry_position(self):
        with pytest.raises(ParseError) as err:
            parse_formula("p & ")
        assert err.value.line == 1
        with pytest.raises(ParseError):
            parse_formula("O[2,1] p")
        with pytest.raises(ParseError):
            parse_formula("(p S q")


class TestAgainstBruteForce:
    def test_spot_formulas(self):
        cases = [
            Since(Interval(1, 3), Or(P, Q), And(P, Not(Q))),
            Historically(Interval(0, 2), Once(Interval(1, 1), P)),
            Since(UNBOUNDED, Y(P), Since(Interval(0, 2), Q, P)),
        ]
        rng = random.Random(5)
        for phi in cases:
            for _ in range(30):
                bits = lambda: "".join(rng.choice("01") for _ in range(7))
                trace = mk(p=bits(), q=bits())
                for t in range(len(trace)):
                    assert eval_at(phi, trace, t) == brute_eval_at(phi, trace, t)
