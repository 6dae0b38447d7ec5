import random
from fractions import Fraction

import pytest

from src.representations.atomic import Arrow, Gap, OverlayRep, PhaseFreeRep, PhaseTwistedRep
from src.representations.builtins import make_builtin, parse_stream, thue_morse_stream
from src.representations.hints import parse_region
from src.representations.induced import induce_w, induce_w_back
from src.representations.phase import ONE, Phase
from src.representations.rep_file import emit_rep_file, load_rep, parse_rep_file
from src.representations.verify import explore, is_nica_covariant, v_orbit_type, verify_relations
from src.semigroup.errors import (
    AddressCycleAllN,
    BadParam,
    BadRank,
    MissingParam,
    NoCarryTarget,
    PresentationError,
    RepSyntaxError,
    UnknownBuiltin,
)
from src.semigroup.odometer import OdometerElement

from .conftest import sample_vertices


def third():
    return Phase(Fraction(1, 3))


class TestPhase:
    def test_normalised(self):
        assert Phase(Fraction(4, 3)) == third()
        assert Phase(Fraction(-2, 3)) == third()

    def test_arithmetic(self):
        assert (third() * third() * third()).is_one
        assert third() / third() == ONE
        assert str(third().conj()) == "2/3"


class TestBuiltins:
    def test_verify_relations_depth_8(self, builtin):
        report = verify_relations(builtin, builtin.seeds, 8)
        assert report.passed, report.violation

    def test_fn_unitary_phase_on_root(self):
        rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
        assert rep.w_of(()) == Arrow((), third())
        assert rep.w_back(()) == Arrow((), third())

    def test_fn_unitary_carry_out_of_all_n_word(self):
        rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
        assert rep.w_of((2, 2)) == Arrow((1, 1), third())
        assert rep.w_of((1, 2)) == Arrow((2, 2))

    def test_su_tree_root(self):
        rep = make_builtin("su_tree", 2)
        assert rep.v_of(1, ()) == Arrow(())
        assert rep.w_of(()) == Arrow((2,))
        assert rep.w_back(()) is Gap.ZERO
        assert rep.w_of((2,)) == Arrow((1, 2))

    @pytest.mark.parametrize("n", [2, 3])
    def test_su_tree_ranges_partition_vertices(self, n):
        rep = make_builtin("su_tree", n)
        counts = {
            sum(1 for k in range(1, n + 1) if rep.v_back(k, v) is not Gap.ZERO)
            for v in sample_vertices(rep, radius=5)
        }
        assert counts == {1}

    def test_weak_shift_arrows(self):
        rep = make_builtin("weak_shift", 2)
        assert rep.v_of(2, (0, 0)) == Arrow((1, 1))
        assert rep.v_back(1, (0, 0)) == Arrow((-1, 0))
        assert rep.w_back((0, 0)) == Arrow((0, -1))
        assert rep.w_back((-1, 0)) is Gap.ZERO
        assert rep.parse_key("(-3, 2)") == (-3, 2)

    def test_weak_shift_window(self):
        rep = make_builtin("weak_shift", 2)
        region = explore(rep, rep.seeds, 3)
        assert (-3, 0) in region
        assert (3, 3) in region
        assert all(rep.contains(v) for v in region)

    def test_slocinski_quadrant_union(self):
        rep = make_builtin("slocinski", 1)
        region = explore(rep, rep.seeds, 5)
        assert all(v[0] >= 0 or v[1] >= 0 for v in region)
        assert (-5, 0) in region and (0, -5) in region
        assert (-1, -1) not in region

    def test_thue_morse_digits(self):
        digit = thue_morse_stream(2)
        assert [digit(m) for m in range(1, 5)] == [1, 2, 2, 1]

    def test_inductive_keys(self):
        rep = make_builtin("inductive", 2, {"stream": "thue_morse"})
        assert rep.format_key((0, ())) == "g0"
        assert rep.parse_key("21g3") == (3, (2, 1))
        assert rep.v_back(1, (0, ())) == Arrow((1, ()))

    def test_errors(self):
        with pytest.raises(UnknownBuiltin):
            make_builtin("nope", 2)
        with pytest.raises(BadRank):
            make_builtin("su_tree", 1)
        with pytest.raises(BadRank):
            make_builtin("slocinski", 2)
        with pytest.raises(MissingParam):
            make_builtin("left_regular_fn_unitary", 2)
        with pytest.raises(MissingParam):
            make_builtin("inductive", 2)
        with pytest.raises(BadParam):
            parse_stream("periodic(11)", 2)
        with pytest.raises(BadParam):
            parse_stream("fibonacci", 2)


class TestNicaCovariance:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_left_regular(self, n):
        rep = make_builtin("left_regular_on", n)
        assert is_nica_covariant(rep, rep.seeds, 6).passed

    @pytest.mark.parametrize("name,params", [
        ("left_regular_fn_unitary", {"lambda": "1/3"}),
        ("inductive", {"stream": "thue_morse"}),
    ])
    def test_unitary_w(self, name, params):
        rep = make_builtin(name, 2, params)
        assert is_nica_covariant(rep, rep.seeds, 6).passed

    def test_weak_shift_witness(self):
        rep = make_builtin("weak_shift", 2)
        report = is_nica_covariant(rep, rep.seeds, 6)
        assert not report.passed
        assert report.violation.vertex == "(-1,0)"


class TestWrappers:
    def test_twist_keeps_relations_when_w_phase_is_root_of_unity(self):
        base = make_builtin("left_regular_on", 3)
        twisted = PhaseTwistedRep(base, Phase(Fraction(1, 2)), third())
        assert verify_relations(twisted, twisted.seeds, 5).passed

    def test_twist_breaks_relations_otherwise(self):
        base = make_builtin("left_regular_on", 2)
        twisted = PhaseTwistedRep(base, third(), ONE)
        report = verify_relations(twisted, twisted.seeds, 3)
        assert not report.passed
        assert report.violation.relation == "WV_n=V_1W"

    def test_phase_free_drops_lambda(self):
        rep = PhaseFreeRep(make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"}))
        assert rep.w_of(()) == Arrow(())
        assert verify_relations(rep, rep.seeds, 5).passed

    def test_overlay_fault_is_located(self):
        base = make_builtin("su_tree", 2)
        broken = OverlayRep(base, w_overrides={(2,): Arrow((2, 2))})
        report = verify_relations(broken, broken.seeds, 3)
        assert not report.passed
        assert report.violation.vertex == "e"
        assert report.violation.relation == "WV_n=V_1W"


@pytest.mark.parametrize("name,params", [("su_tree", {}), ("inductive", {"stream": "thue_morse"})])
def test_induced_w_is_forced(name, params):
    """Moving any single induced arrow breaks a relation within two steps"""
    rep = make_builtin(name, 2, params)
    region = sorted(explore(rep, rep.seeds, 3), key=rep.sort_key)
    rng = random.Random(7)
    for _ in range(50):
        x = rng.choice(region)
        original = rep.w_of(x)
        if rng.random() < 0.5:
            target = rng.choice([y for y in region if y != original.target])
            replacement = Arrow(target, original.phase)
        else:
            replacement = Arrow(original.target, original.phase * Phase(Fraction(1, 4)))
        broken = OverlayRep(rep, w_overrides={x: replacement})
        assert not verify_relations(broken, [x], 2).passed


class TestInduce:
    def test_cycle_of_top_digit(self):
        rep = parse_rep_file("odometer 2\narrow v2 a a\n")
        with pytest.raises(AddressCycleAllN):
            induce_w(rep, "a")

    def test_wandering_without_unitary(self):
        rep = parse_rep_file("odometer 2\narrow v2 a b\n")
        with pytest.raises(NoCarryTarget):
            induce_w(rep, "b")

    def test_back_of_ones_cycle_is_zero(self):
        rep = make_builtin("su_tree", 3)
        assert induce_w_back(rep, ()) is Gap.ZERO

    def test_back_inverts_forward(self):
        rep = make_builtin("left_regular_fn_unitary", 3, {"lambda": "2/5"})
        for v in explore(rep, rep.seeds, 3):
            forward = induce_w(rep, v, rep.wandering_unitary)
            assert induce_w_back(rep, forward.target, rep.wandering_unitary) == Arrow(v, forward.phase)


class TestOrbitTypes:
    def test_left_regular_terminal(self):
        rep = make_builtin("left_regular_on", 2)
        kind = v_orbit_type(rep, OdometerElement(2, (2, 1), 3), 32)
        assert kind.kind == "left-regular"
        assert kind.terminal == OdometerElement(2, (), 3)

    def test_su_tree_root_cycle(self):
        rep = make_builtin("su_tree", 2)
        kind = v_orbit_type(rep, (2, 2), 32)
        assert kind.kind == "cycle"
        assert kind.period == 1

    def test_inductive(self):
        rep = make_builtin("inductive", 2, {"stream": "thue_morse"})
        assert v_orbit_type(rep, (0, (2,)), 32).kind == "inductive"


class TestRegions:
    def test_coordinate_bound(self):
        region = parse_region("r>=0")
        assert region.contains((1, -3))
        assert region.contains("(2,5)")
        assert not region.contains((-1, 0))
        assert not region.contains("e")

    def test_key_set_and_all(self):
        assert parse_region("{a, b}").contains("b")
        assert not parse_region("{}").contains("a")
        assert parse_region("all").contains("anything")

    def test_unknown(self):
        with pytest.raises(ValueError):
            parse_region("x>=0")


class TestRepFile:
    def test_minimal_file(self):
        rep = parse_rep_file("odometer 2\nvertex a\nvertex b\narrow w a b\n")
        assert rep.w_of("a") == Arrow("b")
        assert rep.w_back("b") == Arrow("a")
        assert rep.w_back("a") is Gap.ZERO
        assert rep.v_of(1, "a") is Gap.UNEXPLORED

    def test_phase_and_boundary(self):
        rep = parse_rep_file("odometer 1\narrow v1 a b 1/3\nboundary a\n")
        assert rep.v_of(1, "a") == Arrow("b", third())
        assert rep.v_back(1, "a") is Gap.UNEXPLORED

    def test_overlapping_ranges(self):
        with pytest.raises(PresentationError) as info:
            parse_rep_file("odometer 2\narrow v1 a c\narrow v2 b c\n")
        assert info.value.kind == "overlapping-ranges"
        assert info.value.line == 3

    def test_same_v_into_one_target(self):
        with pytest.raises(PresentationError) as info:
            parse_rep_file("odometer 2\narrow v1 a c\narrow v1 b c\n")
        assert info.value.kind == "non-injective"
        assert info.value.line == 3

    def test_coordinate_bound_hint(self):
        rep = parse_rep_file("odometer 2\nvertex (0,0)\nvertex (0,-1)\nhint VBackwardTotal t >= 0\n")
        hint = rep.hints[0]
        assert hint.region.description == "t>=0"
        assert hint.covers("(0,0)")
        assert not hint.covers("(0,-1)")

    def test_duplicate_arrow(self):
        with pytest.raises(PresentationError) as info:
            parse_rep_file("odometer 2\narrow w a b\narrow w a c\n")
        assert info.value.kind == "duplicate-arrow"

    def test_digit_range(self):
        with pytest.raises(PresentationError) as info:
            parse_rep_file("odometer 2\narrow v3 a b\n")
        assert info.value.kind == "digit-range"

    def test_missing_header(self):
        with pytest.raises(RepSyntaxError) as info:
            parse_rep_file("vertex a\n")
        assert info.value.line == 1

    def test_mixed_builtin_and_arrows(self):
        with pytest.raises(PresentationError) as info:
            parse_rep_file("odometer 2\nbuiltin weak_shift 2\nvertex a\n")
        assert info.value.kind == "mixed"

    def test_builtin_directive(self):
        rep = parse_rep_file("# a comment\nbuiltin weak_shift 2\n")
        assert rep.name == "weak_shift"

    def test_builtin_argument(self):
        rep = load_rep("builtin:left_regular_fn_unitary:2:lambda=1/3")
        assert rep.w_of(()) == Arrow((), third())

    def test_emit_round_trip(self, builtin):
        text = emit_rep_file(builtin, builtin.seeds, 3)
        patch = parse_rep_file(text)
        assert verify_relations(patch, patch.seeds, 3).passed
        for key in patch.vertices():
            v = builtin.parse_key(key)
            for gen in builtin.generators():
                step = patch.forward(gen, key)
                if isinstance(step, Arrow):
                    original = builtin.forward(gen, v)
                    assert builtin.format_key(original.target) == step.target
                    assert original.phase == step.phase
