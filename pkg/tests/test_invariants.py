"""Properties every classification must have, checked over sampled vertices of each builtin."""
from fractions import Fraction

import pytest

from src.representations.atomic import Arrow, PhaseFreeRep, PhaseTwistedRep
from src.representations.builtins import make_builtin
from src.representations.orbits import v_preimage, walk, wv_preimage
from src.representations.phase import ONE, Phase
from src.wold.certificates import ComponentId, Status, replay_certificate
from src.wold.classifier import ClassificationSession
from src.wold.popovici import PopoviciDecomposition

from .conftest import sample_at_least, sample_vertices

DIRECT = (ComponentId.UU, ComponentId.US, ComponentId.SU)


def test_resolved_vertices_lie_in_exactly_one_component(builtin):
    session = ClassificationSession(builtin, 32)
    for v in sample_at_least(builtin):
        result = session.classify(v)
        if result.resolved is None:
            continue
        statuses = [result.status(c) for c in DIRECT + (ComponentId.WS,)]
        assert statuses.count(Status.IN) == 1, builtin.format_key(v)
        assert Status.UNKNOWN not in statuses


def test_components_are_closed_under_arrows(builtin):
    session = ClassificationSession(builtin, 32)
    for v in sample_at_least(builtin, seed=2):
        resolved = session.classify(v).resolved
        if resolved is None:
            continue
        for u in builtin.neighbours(v):
            other = session.classify(u).resolved
            assert other in (None, resolved), (builtin.format_key(v), builtin.format_key(u))


def test_every_certificate_replays(builtin):
    session = ClassificationSession(builtin, 32)
    for v in sample_at_least(builtin, seed=1):
        for component, certificate in session.classify(v).certificates():
            assert replay_certificate(builtin, certificate), (builtin.format_key(v), component)


@pytest.mark.parametrize("wrap", [
    PhaseFreeRep,
    lambda rep: PhaseTwistedRep(rep, ONE, Phase(Fraction(1, 5))),
], ids=["phase-free", "twisted"])
def test_phases_do_not_change_classes(builtin, wrap):
    plain = ClassificationSession(builtin, 32)
    phased = ClassificationSession(wrap(builtin), 32)
    for v in sample_at_least(builtin, seed=3):
        a, b = plain.classify(v), phased.classify(v)
        assert a.resolved == b.resolved, builtin.format_key(v)
        for c in DIRECT:
            assert a.status(c) == b.status(c), (builtin.format_key(v), c)


def test_nica_covariant_weak_bi_shift_part_is_ss():
    rep = make_builtin("left_regular_on", 2)
    session = ClassificationSession(rep, 32)
    for v in sample_vertices(rep, radius=3):
        result = session.classify(v)
        assert result.nica
        assert result.resolved == ComponentId.SS


def test_w_keeps_address_length_in_fn_unitary():
    rep = make_builtin("left_regular_fn_unitary", 2, {"lambda": "1/3"})
    for v in sample_vertices(rep, radius=4):
        forward = walk(rep, rep.w_of(v).target, "v_back", 64)
        backward = walk(rep, v, "v_back", 64)
        assert len(forward.digits) == len(backward.digits) == len(v)


@pytest.mark.parametrize("stream", ["thue_morse", "periodic(12)", "periodic(2112)"])
def test_wv_row_is_unitary_exactly_where_w_and_v_are(stream):
    rep = make_builtin("inductive", 2, {"stream": stream})
    for x in sample_vertices(rep, radius=4):
        row_total = isinstance(wv_preimage(rep, x)[0], Arrow)
        parts_total = isinstance(rep.w_back(x), Arrow) and isinstance(v_preimage(rep, x)[0], Arrow)
        assert row_total == parts_total


def test_rank_one_implementations_agree():
    rep = make_builtin("slocinski", 1)
    other = make_builtin("weak_shift", 1)
    popovici = PopoviciDecomposition(rep, 32)
    direct = ClassificationSession(rep, 32)
    generic = ClassificationSession(other, 32)
    compared = 0
    for r in range(-8, 9):
        for t in range(-8, 9):
            if r < 0 and t < 0:
                continue
            v = (r, t)
            a, b, c = popovici.classify(v).resolved, direct.classify(v).resolved, generic.classify(v).resolved
            assert a == b == c, v
            compared += 1
    assert compared == 17 * 17 - 8 * 8
    assert popovici.classify((0, 0)).resolved == ComponentId.WS
