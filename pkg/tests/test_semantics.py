import random

import pytest

from fretsem import boolexpr as be
from fretsem import mtl
from fretsem.errors import UnsupportedRequirementError
from fretsem.fretish import (GLOBAL_SCOPE, Requirement, Scope, Timing,
                             parse_requirement)
from fretsem.harness import BOOL_VARS, gen_trace
from fretsem.semantics import (EMPTY_OLI, OLI, bool_sem, dual_timing,
                               first_stop, fret_sem_member, oli_complement,
                               oli_from_indices, scope_sem, semantics_report,
                               stops, timing_holds, triggers)
from fretsem.translate import gen_form

from helpers import block_column, mk

M = be.Var("m")
R = be.Var("r")


def reference_trace():
    """24 states; mode holds on [2,7] and [16,21], res never holds."""
    return mk(mode=block_column(24, [(2, 7), (16, 21)]), res="0" * 24)


class TestOLI:
    def test_invariants_enforced(self):
        OLI(((0, 2), (4, 5)))
        with pytest.raises(ValueError):
            OLI(((2, 1),))
        with pytest.raises(ValueError):
            OLI(((0, 2), (3, 5)))  # adjacent intervals must be merged
        with pytest.raises(ValueError):
            OLI(((4, 5), (0, 2)))

    def test_from_indices_merges_maximal_runs(self):
        assert oli_from_indices({0, 2, 3}) == OLI(((0, 0), (2, 3)))
        assert oli_from_indices([]) == EMPTY_OLI

    def test_membership(self):
        oli = OLI(((2, 7), (16, 21)))
        assert 2 in oli and 7 in oli and 16 in oli
        assert 8 not in oli and 22 not in oli


class TestBoolSem:
    def test_reference_trace_values(self):
        trace = reference_trace()
        assert bool_sem(be.Var("mode"), trace) == OLI(((2, 7), (16, 21)))
        assert bool_sem(be.Var("res"), trace) == EMPTY_OLI

    def test_constant_true_covers_the_trace(self):
        assert bool_sem(be.TRUE, mk(p="000000")) == OLI(((0, 5),))

    def test_per_index_evaluation(self):
        assert bool_sem(be.Var("p"), mk(p="10110")) == OLI(((0, 0), (2, 3)))


class TestComplement:
    def test_empty_and_full(self):
        assert oli_complement(EMPTY_OLI, 5) == OLI(((0, 5),))
        assert oli_complement(OLI(((0, 7),)), 7) == EMPTY_OLI

    def test_interior_gaps(self):
        assert oli_complement(OLI(((2, 7), (16, 21))), 23) == \
            OLI(((0, 1), (8, 15), (22, 23)))

    def test_bound_is_checked(self):
        with pytest.raises(ValueError):
            oli_complement(OLI(((0, 9),)), 5)

    def test_involution(self):
        rng = random.Random(10)
        for _ in range(200):
            n = rng.randrange(12)
            oli = oli_from_indices(i for i in range(n + 1) if rng.random() < .5)
            assert oli_complement(oli_complement(oli, n), n) == oli

    def test_complement_matches_negation(self):
        rng = random.Random(11)
        exprs = [be.Var("p"), be.And(be.Var("p"), be.Var("q")),
                 be.Implies(be.Var("p"), be.Var("q"))]
        for _ in range(100):
            bits = lambda: "".join(rng.choice("01") for _ in range(6))
            trace = mk(p=bits(), q=bits())
            for expr in exprs:
                lhs = bool_sem(expr, trace)
                rhs = oli_complement(bool_sem(be.Not(expr), trace), trace.last)
                assert lhs == rhs


class TestScopeSem:
    def test_global_scope_is_the_whole_trace(self):
        assert scope_sem(GLOBAL_SCOPE, mk(m="0000")) == OLI(((0, 3),))

    def test_reference_trace_scopes(self):
        trace = reference_trace()
        mode = be.Var("mode")
        assert scope_sem(Scope("in", mode), trace) == OLI(((2, 7), (16, 21)))
        assert scope_sem(Scope("before", mode), trace) == OLI(((0, 1),))
        assert scope_sem(Scope("after", mode), trace) == OLI(((8, 23),))
        assert scope_sem(Scope("notin", mode), trace) == \
            OLI(((0, 1), (8, 15), (22, 23)))
        assert scope_sem(Scope("onlyin", mode), trace) == \
            scope_sem(Scope("notin", mode), trace)
        assert scope_sem(Scope("onlyafter", mode), trace) == OLI(((0, 7),))
        assert scope_sem(Scope("onlybefore", mode), trace) == OLI(((2, 23),))

    def test_after_keys_on_the_first_mode_interval(self):
        trace = mk(m=block_column(10, [(1, 2), (5, 6)]))
        assert scope_sem(Scope("after", M), trace) == OLI(((3, 9),))

    def test_empty_cases(self):
        never = mk(m="000000")
        always = mk(m="111111")
        assert scope_sem(Scope("in", M), never) == EMPTY_OLI
        assert scope_sem(Scope("notin", M), always) == EMPTY_OLI
        assert scope_sem(Scope("after", M), never) == EMPTY_OLI
        # mode running to the end leaves nothing after it
        assert scope_sem(Scope("after", M), mk(m="001111")) == EMPTY_OLI
        assert scope_sem(Scope("before", M), mk(m="100000")) == EMPTY_OLI
        assert scope_sem(Scope("onlybefore", M), never) == EMPTY_OLI
        # a never-entered mode leaves 'before' covering everything
        assert scope_sem(Scope("before", M), never) == OLI(((0, 5),))
        assert scope_sem(Scope("onlyafter", M), never) == OLI(((0, 5),))

    def test_in_and_notin_partition_the_trace(self):
        rng = random.Random(12)
        for _ in range(100):
            trace = mk(m="".join(rng.choice("01") for _ in range(rng.randint(1, 10))))
            inside = scope_sem(Scope("in", M), trace)
            outside = scope_sem(Scope("notin", M), trace)
            for t in range(len(trace)):
                assert (t in inside) != (t in outside)


class TestTriggers:
    def test_null_condition_triggers_at_the_interval_start(self):
        assert triggers(None, mk(m="0" * 10), (3, 9)) == {3}

    def test_rising_edges_and_clamped_start(self):
        trace = mk(c="10110")
        assert triggers(be.Var("c"), trace, (0, 3)) == {0, 2}

    def test_no_overlap_means_no_triggers(self):
        trace = mk(c=block_column(10, [(0, 1)]))
        assert triggers(be.Var("c"), trace, (5, 9)) == set()

    def test_straddling_interval_triggers_at_the_start(self):
        trace = mk(c=block_column(10, [(1, 6)]))
        assert triggers(be.Var("c"), trace, (3, 9)) == {3}


class TestStops:
    def test_every_stop_index_in_the_interval(self):
        trace = mk(s=block_column(10, [(4, 6)]))
        assert stops(be.Var("s"), trace, (0, 9)) == {4, 5, 6}

    def test_restricted_to_the_interval(self):
        trace = mk(s=block_column(10, [(0, 2), (5, 5)]))
        assert stops(be.Var("s"), trace, (1, 9)) == {1, 2, 5}

    def test_never_stopping(self):
        assert stops(be.Var("s"), mk(s="0" * 10), (0, 9)) == set()

    def test_first_stop_at_or_after_the_trigger(self):
        trace = mk(s=block_column(10, [(4, 6)]))
        assert first_stop(be.Var("s"), 1, trace, (0, 9)) == 4
        assert first_stop(be.Var("s"), 5, trace, (0, 9)) == 5
        assert first_stop(be.Var("s"), 7, trace, (0, 9)) == 10

    def test_first_stop_defaults_past_the_interval_end(self):
        assert first_stop(be.Var("s"), 3, mk(s="0" * 10), (0, 9)) == 10


class TestTimingHolds:
    def test_trigger_free_intervals_satisfy_every_timing(self):
        trace = mk(c="0" * 6, r="0" * 6, s="1" * 6)
        timings = [Timing("immediately"), Timing("next"), Timing("always"),
                   Timing("never"), Timing("eventually"),
                   Timing("within", duration=2), Timing("for", duration=2),
                   Timing("after", duration=2),
                   Timing("until", stop=be.Var("s")),
                   Timing("before", stop=be.Var("s"))]
        for timing in timings:
            assert timing_holds(timing, be.Var("c"), R, trace, (0, 5))

    def test_always(self):
        assert timing_holds(Timing("always"), None, R, mk(r="1111"), (0, 3))
        assert not timing_holds(Timing("always"), None, R, mk(r="1101"), (0, 3))

    def test_within_deadline(self):
        # condition fires at 1; response three steps later, still inside
        trace = mk(c=block_column(8, [(1, 2)]), r=block_column(8, [(4, 4)]))
        within3 = Timing("within", duration=3)
        assert timing_holds(within3, be.Var("c"), R, trace, (0, 7))
        # no response at all inside the window
        missing = mk(c=block_column(8, [(1, 2)]), r="0" * 8)
        assert not timing_holds(within3, be.Var("c"), R, missing, (0, 7))
        # the interval ends before the deadline: nothing is owed
        assert timing_holds(within3, be.Var("c"), R, missing, (0, 3))

    def test_immediately_and_next(self):
        trace = mk(c="01000", r="01100")
        assert timing_holds(Timing("immediately"), be.Var("c"), R, trace, (0, 4))
        assert timing_holds(Timing("next"), be.Var("c"), R, trace, (0, 4))
        late = mk(c="01000", r="00010")
        assert not timing_holds(Timing("immediately"), be.Var("c"), R, late, (0, 4))
        assert not timing_holds(Timing("next"), be.Var("c"), R, late, (0, 4))
        # a trigger on the last index owes nothing for 'next'
        assert timing_holds(Timing("next"), be.Var("c"), R,
                            mk(c="00001", r="00000"), (0, 4))

    def test_until_runs_to_the_first_stop(self):
        trace = mk(c="10000000", r="11110000", s=block_column(8, [(4, 5)]))
        assert timing_holds(Timing("until", stop=be.Var("s")),
                            be.Var("c"), R, trace, (0, 7))
        gap = mk(c="10000000", r="11010000", s=block_column(8, [(4, 5)]))
        assert not timing_holds(Timing("until", stop=be.Var("s")),
                                be.Var("c"), R, gap, (0, 7))

    def test_until_with_stop_already_true_at_the_trigger(self):
        trace = mk(c="1000", r="0000", s="1000")
        assert timing_holds(Timing("until", stop=be.Var("s")),
                            be.Var("c"), R, trace, (0, 3))

    def test_before_requires_a_response_before_the_stop(self):
        ok = mk(c="10000", r="01000", s="00100")
        assert timing_holds(Timing("before", stop=be.Var("s")),
                            be.Var("c"), R, ok, (0, 4))
        bad = mk(c="10000", r="00010", s="00100")
        assert not timing_holds(Timing("before", stop=be.Var("s")),
                                be.Var("c"), R, bad, (0, 4))
        no_stop = mk(c="10000", r="00000", s="00000")
        assert timing_holds(Timing("before", stop=be.Var("s")),
                            be.Var("c"), R, no_stop, (0, 4))

    def test_never_is_always_with_negated_response(self):
        rng = random.Random(13)
        for _ in range(100):
            trace = gen_trace("uniform", rng.randint(1, 8), BOOL_VARS, rng)
            n = trace.last
            lo = rng.randrange(n + 1)
            hi = rng.randrange(lo, n + 1)
            assert timing_holds(Timing("never"), be.Var("c"), R, trace, (lo, hi)) == \
                timing_holds(Timing("always"), be.Var("c"), be.Not(R), trace, (lo, hi))

    def test_after_is_hold_off_then_deadline(self):
        rng = random.Random(14)
        for _ in range(100):
            trace = gen_trace("uniform", rng.randint(1, 10), BOOL_VARS, rng)
            n = trace.last
            lo = rng.randrange(n + 1)
            hi = rng.randrange(lo, n + 1)
            d = rng.randint(1, 3)
            assert timing_holds(Timing("after", duration=d), be.Var("c"), R,
                                trace, (lo, hi)) == (
                timing_holds(Timing("for", duration=d), be.Var("c"),
                             be.Not(R), trace, (lo, hi))
                and timing_holds(Timing("within", duration=d + 1),
                                 be.Var("c"), R, trace, (lo, hi)))


class TestDualTiming:
    @pytest.mark.parametrize("timing,expected", [
        (Timing("always"), Timing("eventually")),
        (Timing("eventually"), Timing("always")),
        (Timing("within", duration=3), Timing("for", duration=3)),
        (Timing("for", duration=3), Timing("within", duration=3)),
        (Timing("before", stop=be.Var("s")), Timing("until", stop=be.Var("s"))),
        (Timing("until", stop=be.Var("s")), Timing("before", stop=be.Var("s"))),
        (Timing("immediately"), Timing("immediately")),
        (Timing("next"), Timing("next")),
    ])
    def test_table(self, timing, expected):
        assert dual_timing(timing) == expected

    def test_never_and_after_have_no_dual(self):
        with pytest.raises(UnsupportedRequirementError):
            dual_timing(Timing("never"))
        with pytest.raises(UnsupportedRequirementError):
            dual_timing(Timing("after", duration=2))


class TestMembership:
    def test_global_always(self):
        req = Requirement(GLOBAL_SCOPE, None, Timing("always"), be.Var("p"))
        assert fret_sem_member(req, mk(p="1111"))
        assert not fret_sem_member(req, mk(p="1101"))

    def test_detect_and_avoid_example(self):
        req = parse_requirement(
            "in flight mode, when hd <= 250 & vd <= 50 "
            "the aircraft shall within 3 ticks satisfy warning_alert")
        conforming = mk(flight=block_column(8, [(1, 6)]),
                        hd=[300, 300, 200, 200, 300, 300, 300, 300],
                        vd=[40] * 8,
                        warning_alert="00001000")
        assert fret_sem_member(req, conforming)
        silent = mk(flight=block_column(8, [(1, 6)]),
                    hd=[300, 300, 200, 200, 300, 300, 300, 300],
                    vd=[40] * 8,
                    warning_alert="0" * 8)
        assert not fret_sem_member(req, silent)

    def test_only_scope_enforces_the_dual_outside(self):
        # only-in + always(p): outside the mode frame, eventually(!p)
        req = Requirement(Scope("onlyin", M), None, Timing("always"), be.Var("p"))
        assert not fret_sem_member(req, mk(m="1100", p="1111"))
        assert fret_sem_member(req, mk(m="1100", p="1110"))

    def test_empty_scope_policies(self):
        req = Requirement(Scope("in", M), None, Timing("always"), be.Var("p"))
        never_in_mode = mk(m="0000", p="0000")
        assert fret_sem_member(req, never_in_mode, policy="vacuous")
        assert not fret_sem_member(req, never_in_mode, policy="literal")
        with pytest.raises(ValueError):
            fret_sem_member(req, never_in_mode, policy="sometimes")

    def test_only_scope_with_after_timing_is_rejected(self):
        req = Requirement(Scope("onlyin", M), None,
                          Timing("after", duration=2), be.Var("p"))
        with pytest.raises(UnsupportedRequirementError):
            fret_sem_member(req, mk(m="10", p="01"))

    def test_until_vacuous_when_stop_holds_at_the_trigger(self):
        # regression: the stop already holding where the obligation starts
        # discharges it, on both sides of the differential check
        req = parse_requirement("the sw shall until s satisfy r")
        trace = mk(s="1000", r="0000")
        assert fret_sem_member(req, trace) is True
        assert mtl.evaluate(gen_form(req), trace) is True


class TestSemanticsReport:
    def test_reference_dump_is_stable(self):
        req = parse_requirement("in mode mode, the sw shall always satisfy res")
        lines, member = semantics_report(req, reference_trace())
        assert lines == [
            "mode: [2,7] [16,21]",
            "res: (empty)",
            "scope(in mode): [2,7] [16,21]",
            "triggers(I=[2,7]): {2}",
            "triggers(I=[16,21]): {16}",
            "member: false",
        ]
        assert member is False

    def test_empty_scope_literal_policy(self):
        req = parse_requirement("in m mode, the sw shall always satisfy r")
        lines, member = semantics_report(req, mk(m="000", r="000"),
                                         policy="literal")
        assert lines[-1] == "member: false (empty scope)"
        assert member is False

    def test_stop_sets_are_listed_for_stop_timings(self):
        req = parse_requirement("the sw shall until s satisfy r")
        lines, _ = semantics_report(req, mk(s="0110", r="1111"))
        assert "stop: [1,2]" in lines
        assert "stops(I=[0,3]): {1, 2}" in lines
