"""Independent decomposition for a commuting pair (S_1, S_2) = (V_1, W), n = 1.

    H_uu = intersection of (S_1 S_2)^m H
    H_su = sum over i of S_1^i [intersection over m of S_2^m (intersection over j of ker S_1* S_2^j)]
    H_us = sum over i of S_2^i [intersection over m of S_1^m (intersection over j of ker S_2* S_1^j)]

In the pair's own naming the middle piece has S_1 pure and S_2 unitary, which is
our US (W unitary); the last is our SU.
"""
from typing import Dict, Iterable, Optional

from ..config import settings
from ..representations.atomic import AtomicRep, VertexKey
from ..representations.hints import HintKind, validate_hint
from ..representations.orbits import WalkEnd, in_ran_v, in_ran_w, walk
from ..semigroup.errors import HintViolation, RankNotOne
from ..semigroup.logger_config import setup_logger
from .certificates import (
    ComponentId,
    DeadBackwardOrbit,
    HintRegion,
    OrbitCycle,
    RangeHit,
    Status,
    Stripped,
    Verdict,
)
from .classifier import Classification, ClassificationSession

logger = setup_logger('popovici')


class PopoviciDecomposition:
    def __init__(self, rep: AtomicRep, budget: int):
        if rep.n != 1:
            raise RankNotOne(f"The commuting-pair decomposition needs n = 1, got {rep.n}")
        self.rep = rep
        self.budget = budget
        self.session = ClassificationSession(rep, budget)

    def _hint_stop(self, kinds: Iterable[HintKind]):
        kinds = tuple(kinds)

        def stop(x, _index):
            for hint in self.rep.hints:
                if hint.kind in kinds and hint.covers(x):
                    problem = validate_hint(self.rep, hint, x, settings.hint_check_depth)
                    if problem:
                        raise HintViolation(f"Hint {hint.hint_id}: {problem}")
                    return hint.hint_id
            return None
        return stop

    def _hint_certificate(self, result) -> HintRegion:
        return HintRegion((result.reason,), result.last, result.step, tuple(result.chain))

    def unitary_part(self, v: VertexKey) -> Verdict:
        """v in the intersection of (S_1 S_2)^m H"""
        result = walk(self.rep, v, "w_v1_back", self.budget, self._hint_stop([HintKind.WV_BACKWARD_TOTAL]))
        if result.end == WalkEnd.STOPPED:
            return Verdict(Status.IN, self._hint_certificate(result), 0)
        if result.end == WalkEnd.CYCLE:
            return Verdict(Status.IN, OrbitCycle("w_v1_back", tuple(result.chain), result.period), 0)
        if result.end == WalkEnd.DEAD:
            return Verdict(Status.OUT, DeadBackwardOrbit("w_v1_back", tuple(result.chain)), result.steps_taken + 1)
        return Verdict.unknown(len(result.chain))

    def _mixed(self, v, pure_back: str, pure_hints, uni_back: str, uni_fwd: str, in_pure_range, range_name: str) -> Verdict:
        """S_pure-shift over a core on which S_uni is unitary and misses ran S_pure"""
        strip = walk(self.rep, v, pure_back, self.budget, self._hint_stop(pure_hints))
        if strip.end == WalkEnd.STOPPED:
            return Verdict(Status.OUT, self._hint_certificate(strip), 0)
        if strip.end == WalkEnd.CYCLE:
            return Verdict(Status.OUT, OrbitCycle(pure_back, tuple(strip.chain), strip.period), 0)
        if strip.end != WalkEnd.DEAD:
            return Verdict.unknown(len(strip.chain))
        core = strip.last

        def wrap(status: Status, certificate, horizon: Optional[int]) -> Verdict:
            return Verdict(status, Stripped(pure_back, tuple(strip.chain), certificate), horizon)

        # intersection over j of ker S_pure* S_uni^j: the forward S_uni-orbit of the core
        hits = walk(self.rep, core, uni_fwd, self.budget, lambda x, _i: "hit" if in_pure_range(self.rep, x) else None)
        if hits.end == WalkEnd.STOPPED:
            return wrap(Status.OUT, RangeHit(uni_fwd, tuple(hits.chain), range_name), hits.steps_taken)

        # intersection over m of S_uni^m: the backward S_uni-chain inside the kernel set
        def leaves_kernel(x, _index):
            return "hit" if in_pure_range(self.rep, x) is not False else None

        chain = walk(self.rep, core, uni_back, self.budget, leaves_kernel)
        if chain.end == WalkEnd.DEAD:
            return wrap(Status.OUT, DeadBackwardOrbit(uni_back, tuple(chain.chain)), chain.steps_taken + 1)
        if chain.end == WalkEnd.STOPPED and in_pure_range(self.rep, chain.last):
            return wrap(Status.OUT, RangeHit(uni_back, tuple(chain.chain), range_name), chain.steps_taken)
        if chain.end == WalkEnd.CYCLE:
            return wrap(Status.IN, OrbitCycle(uni_back, tuple(chain.chain), chain.period), strip.steps_taken)
        return Verdict.unknown(len(strip.chain) + len(hits.chain) + len(chain.chain))

    def w_unitary_part(self, v: VertexKey) -> Verdict:
        """Our US: S_1 = V_1 pure, S_2 = W unitary"""
        return self._mixed(v, "v1_back", [HintKind.V_BACKWARD_TOTAL], "w_back", "w_fwd", in_ran_v, "V")

    def v1_unitary_part(self, v: VertexKey) -> Verdict:
        """Our SU: S_2 = W pure, S_1 = V_1 unitary"""
        return self._mixed(
            v, "w_back", [HintKind.W_BACKWARD_TOTAL, HintKind.W_BACKWARD_TOTAL_IN_KERNEL],
            "v1_back", "v1_fwd", in_ran_w, "W",
        )

    def classify(self, v: VertexKey) -> Classification:
        verdicts: Dict[ComponentId, Verdict] = {
            ComponentId.UU: self.unitary_part(v),
            ComponentId.US: self.w_unitary_part(v),
            ComponentId.SU: self.v1_unitary_part(v),
        }
        logger.debug(
            f"{self.rep.format_key(v)}: " + ", ".join(f"{c.value}={verdicts[c].status.value}" for c in verdicts)
        )
        return self.session.resolve(v, verdicts)


def popovici_n1(rep: AtomicRep, v: VertexKey, budget: int) -> Classification:
    return PopoviciDecomposition(rep, budget).classify(v)
