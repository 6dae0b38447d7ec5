import pytest

from src.representations.builtins import make_builtin
from src.representations.rep_file import parse_rep_file
from src.semigroup.errors import HintViolation, RankNotOne
from src.wold.certificates import (
    Complement,
    ComponentId,
    HintRegion,
    OrbitCycle,
    Status,
    Stripped,
    StripPath,
    Transported,
    replay_certificate,
)
from src.wold.classifier import ClassificationSession, classify, classify_many, in_su, in_us, in_uu
from src.wold.popovici import PopoviciDecomposition, popovici_n1
from src.wold.weak_bi_shift import wandering_vertices, weak_bi_shift_check

from .conftest import EXPECTED_CLASS, sample_vertices


def test_expected_class_everywhere(builtin):
    session = ClassificationSession(builtin, 32)
    for v in sample_vertices(builtin, radius=3):
        result = session.classify(v)
        assert result.resolved is not None, builtin.format_key(v)
        assert result.resolved.value == EXPECTED_CLASS[builtin.name], builtin.format_key(v)


class TestLeftRegular:
    def test_identity_is_ss_with_strip_path(self):
        rep = make_builtin("left_regular_on", 2)
        result = classify(rep, rep.seeds[0], 32)
        assert result.resolved == ComponentId.SS
        assert result.nica
        path = result.verdicts[ComponentId.SS].certificate
        assert isinstance(path, StripPath)
        assert path.mu == () and path.m == 0

    def test_strip_path_digits(self):
        rep = make_builtin("left_regular_on", 2)
        v = rep.parse_key("v[2,1]w^3")
        path = classify(rep, v, 32).verdicts[ComponentId.SS].certificate
        assert path.mu == (2, 1)
        assert path.m == 3
        assert path.core == rep.seeds[0]
        assert replay_certificate(rep, path)

    def test_ws_horizon_is_largest_component_horizon(self):
        rep = make_builtin("left_regular_on", 2)
        result = classify(rep, rep.seeds[0], 32)
        direct = [result.verdicts[c].horizon for c in (ComponentId.UU, ComponentId.US, ComponentId.SU)]
        assert result.verdicts[ComponentId.WS].horizon == max(direct)


class TestFnUnitary:
    def test_root_is_w_cycle(self):
        rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
        verdict = in_us(rep, (), 32)
        assert verdict.status == Status.IN
        assert isinstance(verdict.certificate, Stripped)
        assert isinstance(verdict.certificate.inner, OrbitCycle)
        assert verdict.certificate.inner.period == 1

    def test_deeper_word_strips_to_root(self):
        rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
        verdict = in_us(rep, (2, 1, 2), 32)
        assert verdict.status == Status.IN
        assert verdict.certificate.chain[-1] == ()
        assert verdict.horizon == 3

    def test_su_excluded_by_hint(self):
        rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
        verdict = in_su(rep, (1,), 32)
        assert verdict.status == Status.OUT
        assert isinstance(verdict.certificate, HintRegion)
        assert verdict.certificate.hint_ids == ("fn_unitary:w-back:all",)

    def test_ws_out_rests_on_the_us_certificate(self):
        rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
        result = classify(rep, (), 32)
        ws = result.verdicts[ComponentId.WS]
        assert ws.status == Status.OUT
        assert isinstance(ws.certificate, Complement)
        assert [(c, s) for c, s, _ in ws.certificate.parts] == [(ComponentId.US, Status.IN)]
        assert ws.certificate.parts[0][2] is result.verdicts[ComponentId.US].certificate
        assert replay_certificate(rep, ws.certificate)


class TestSuTree:
    def test_root(self):
        rep = make_builtin("su_tree", 2)
        result = classify(rep, (), 32)
        assert result.resolved == ComponentId.SU
        assert result.status(ComponentId.US) == Status.OUT

    def test_deep_word_is_transported(self):
        rep = make_builtin("su_tree", 2)
        deep = (2,) * 12
        verdict = in_su(rep, deep, 16)
        assert verdict.status == Status.IN
        assert isinstance(verdict.certificate, Transported)
        assert verdict.horizon is None
        assert replay_certificate(rep, verdict.certificate)


class TestInductive:
    def test_uu_by_hint(self):
        rep = make_builtin("inductive", 2, {"stream": "thue_morse"})
        verdict = in_uu(rep, (0, ()), 32)
        assert verdict.status == Status.IN
        assert verdict.horizon == 0
        assert verdict.certificate.hint_ids == ("inductive:wv-back:all",)

    def test_periodic_stream(self):
        rep = make_builtin("inductive", 3, {"stream": "periodic(123)"})
        assert classify(rep, (0, ()), 32).resolved == ComponentId.UU


class TestWeakShift:
    def test_origin(self):
        rep = make_builtin("weak_shift", 2)
        result = classify(rep, (0, 0), 32)
        assert result.resolved == ComponentId.WS
        assert not result.nica
        for c in (ComponentId.UU, ComponentId.US, ComponentId.SU):
            assert result.status(c) == Status.OUT
        assert result.verdicts[ComponentId.UU].horizon == 1

    def test_slocinski_origin(self):
        rep = make_builtin("slocinski", 1)
        assert classify(rep, (0, 0), 32).resolved == ComponentId.WS

    def test_record_shape(self):
        rep = make_builtin("weak_shift", 2)
        record = classify(rep, (0, 0), 32).to_record(rep)
        assert record["vertex"] == "(0,0)"
        assert record["resolved"] == "ws"
        assert record["uu"] == "out"
        assert [entry["component"] for entry in record["certificates"]] == ["uu", "us", "su", "ws"]
        ws = record["certificates"][-1]["certificate"]
        assert ws["kind"] == "complement"
        assert [part["status"] for part in ws["parts"]] == ["out", "out", "out"]

    def test_ws_in_carries_the_three_outs(self):
        rep = make_builtin("weak_shift", 2)
        ws = classify(rep, (0, 0), 32).verdicts[ComponentId.WS]
        assert ws.status == Status.IN
        assert isinstance(ws.certificate, Complement)
        assert [c for c, _, _ in ws.certificate.parts] == [ComponentId.UU, ComponentId.US, ComponentId.SU]
        assert all(s == Status.OUT for _, s, _ in ws.certificate.parts)
        assert replay_certificate(rep, ws.certificate)

    def test_empty_complement_does_not_replay(self):
        rep = make_builtin("weak_shift", 2)
        assert not replay_certificate(rep, Complement(()))


def test_certificates_replay(builtin):
    session = ClassificationSession(builtin, 32)
    for v in sample_vertices(builtin, radius=2):
        for component, certificate in session.classify(v).certificates():
            assert replay_certificate(builtin, certificate), (builtin.format_key(v), component)


def test_small_budget_is_unknown():
    rep = make_builtin("su_tree", 2)
    result = classify(rep, (2, 2), 1)
    assert result.resolved is None
    assert result.status(ComponentId.WS) == Status.UNKNOWN


def test_zero_budget_rejected():
    rep = make_builtin("su_tree", 2)
    with pytest.raises(ValueError):
        ClassificationSession(rep, 0)
    assert ClassificationSession(rep).budget == ClassificationSession(rep, None).budget > 0


def test_false_hint_is_reported():
    rep = parse_rep_file("odometer 1\narrow v1 a b\nhint VBackwardTotal {a,b}\n")
    with pytest.raises(HintViolation):
        classify(rep, "b", 32)


def test_classify_many_keeps_order():
    rep = make_builtin("weak_shift", 2)
    vertices = [(0, 0), (2, -1), (-1, 3)]
    results = classify_many(rep, vertices, 32)
    assert [r.vertex for r in results] == vertices


def test_unknown_vertex_rejected():
    rep = make_builtin("weak_shift", 2)
    with pytest.raises(ValueError):
        classify(rep, (-1, -1), 32)


class TestPopovici:
    def test_requires_rank_one(self):
        with pytest.raises(RankNotOne):
            PopoviciDecomposition(make_builtin("weak_shift", 2), 32)

    def test_agrees_with_classifier_on_slocinski(self):
        rep = make_builtin("slocinski", 1)
        session = ClassificationSession(rep, 32)
        for v in sample_vertices(rep, radius=4):
            assert popovici_n1(rep, v, 32).resolved == session.classify(v).resolved == ComponentId.WS

    def test_left_regular_rank_one(self):
        rep = make_builtin("left_regular_on", 1)
        for v in sample_vertices(rep, radius=3):
            assert popovici_n1(rep, v, 32).resolved == classify(rep, v, 32).resolved == ComponentId.SS


class TestWeakBiShift:
    @pytest.mark.parametrize("name,n", [("weak_shift", 2), ("left_regular_on", 2), ("slocinski", 1)])
    def test_pure_families_pass(self, name, n):
        rep = make_builtin(name, n)
        assert weak_bi_shift_check(rep, rep.seeds, 32).status == "pass"

    def test_su_tree_root_fails(self):
        rep = make_builtin("su_tree", 2)
        report = weak_bi_shift_check(rep, rep.seeds, 32)
        assert report.status == "fail"
        assert {"vertex": "e", "part": "V1-unitary-on-K'"} in report.witnesses

    def test_wandering_vectors_of_weak_shift(self):
        rep = make_builtin("weak_shift", 2)
        report = wandering_vertices(rep, rep.seeds, 3)
        assert set(report.wandering) == {"(0,-1)", "(0,-2)", "(0,-3)"}
