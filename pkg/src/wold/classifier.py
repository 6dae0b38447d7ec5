"""Per-vertex membership in the four Wold components.

Each test walks one deterministic orbit and concludes only with a finite
certificate: a dead end, a cycle, a validated hint region or a range hit.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from ..config import settings
from ..representations.atomic import AtomicRep, VertexKey
from ..representations.hints import Hint, HintKind, validate_hint
from ..representations.orbits import Walk, WalkEnd, in_ran_v, in_ran_w, walk
from ..representations.verify import is_nica_covariant
from ..semigroup.errors import HintViolation
from ..semigroup.logger_config import setup_logger
from .certificates import (
    Certificate,
    Complement,
    ComponentId,
    DeadBackwardOrbit,
    HintRegion,
    OrbitCycle,
    RangeHit,
    Status,
    Stripped,
    StripPath,
    Transported,
    Verdict,
)

DIRECT = (ComponentId.UU, ComponentId.US, ComponentId.SU)
_RANGE = "range"


@dataclass
class Classification:
    vertex: VertexKey
    verdicts: Dict[ComponentId, Verdict]
    resolved: Optional[ComponentId]
    budget: int
    nica: bool = False

    def status(self, component: ComponentId) -> Status:
        verdict = self.verdicts.get(component)
        return verdict.status if verdict else Status.UNKNOWN

    @property
    def conclusive(self) -> bool:
        return self.resolved is not None

    def certificates(self) -> List[Tuple[ComponentId, Certificate]]:
        return [
            (component, verdict.certificate)
            for component, verdict in self.verdicts.items()
            if verdict.certificate is not None
        ]

    def to_record(self, rep: AtomicRep) -> Dict:
        record = {
            "vertex": rep.format_key(self.vertex),
            "resolved": self.resolved.value if self.resolved else None,
            "budget": self.budget,
            "certificates": [],
        }
        for component in ComponentId:
            if component not in self.verdicts:
                continue
            verdict = self.verdicts[component]
            record[component.value] = verdict.status.value
            entry = {"component": component.value}
            entry.update(verdict.to_dict(rep))
            record["certificates"].append(entry)
        return record


class ClassificationSession:
    """Owns the memo tables for one representation and one budget"""

    def __init__(self, rep: AtomicRep, budget: Optional[int] = None, hint_check_depth: Optional[int] = None):
        self.logger = setup_logger('classifier')
        self.rep = rep
        self.budget = settings.default_budget if budget is None else budget
        self.hint_check_depth = settings.hint_check_depth if hint_check_depth is None else hint_check_depth
        if self.budget < 1:
            raise ValueError("Budget must be at least 1")
        self._memo: Dict[Tuple[ComponentId, VertexKey], Verdict] = {}
        self._validated: Dict[Tuple[str, VertexKey], bool] = {}
        self._nica: Optional[bool] = None

    # hints

    def _hints(self, kind: HintKind) -> List[Hint]:
        return [hint for hint in self.rep.hints if hint.kind == kind]

    def _check_hint(self, hint: Hint, entry: VertexKey):
        key = (hint.hint_id, entry)
        if key in self._validated:
            return
        problem = validate_hint(self.rep, hint, entry, self.hint_check_depth)
        if problem:
            message = f"Hint {hint.hint_id} fails at {self.rep.format_key(entry)}: {problem}"
            self.logger.error(message)
            raise HintViolation(message)
        self._validated[key] = True

    def _covering(self, kind: HintKind, x: VertexKey) -> Optional[Hint]:
        for hint in self._hints(kind):
            if hint.covers(x):
                self._check_hint(hint, x)
                return hint
        return None

    def _paired(self, total_kind: HintKind, avoid_kind: HintKind, x: VertexKey) -> Optional[str]:
        """Ids of a backward-total hint and an avoidance hint sharing one region around x"""
        for total in self._hints(total_kind):
            if not total.covers(x):
                continue
            for avoid in self._hints(avoid_kind):
                if avoid.covers(x) and avoid.region.description == total.region.description:
                    self._check_hint(total, x)
                    self._check_hint(avoid, x)
                    return f"{total.hint_id}|{avoid.hint_id}"
        return None

    @staticmethod
    def _hint_certificate(result: Walk) -> HintRegion:
        return HintRegion(tuple(result.reason.split("|")), result.last, result.step, tuple(result.chain))

    # H_uu: the backward orbit under the row {V_2, ..., V_n, V_1 W} never dies

    def _uu_direct(self, v: VertexKey) -> Verdict:
        def stop(x, _index):
            hint = self._covering(HintKind.WV_BACKWARD_TOTAL, x)
            return hint.hint_id if hint else None

        result = walk(self.rep, v, "wv_back", self.budget, stop)
        if result.end == WalkEnd.STOPPED:
            return Verdict(Status.IN, self._hint_certificate(result), 0)
        if result.end == WalkEnd.CYCLE:
            return Verdict(Status.IN, OrbitCycle("wv_back", tuple(result.chain), result.period), 0)
        if result.end == WalkEnd.DEAD:
            return Verdict(Status.OUT, DeadBackwardOrbit("wv_back", tuple(result.chain)), result.steps_taken + 1)
        return Verdict.unknown(len(result.chain))

    # kernel cores shared by H_us and H_su

    def _kernel_core(
        self,
        x: VertexKey,
        back_step: str,
        fwd_step: str,
        in_range,
        range_name: str,
        in_kernel_kind: Optional[HintKind],
        total_kind: HintKind,
        avoid_kind: HintKind,
    ) -> Verdict:
        """x lies in the intersection over m of A^m K, K = {u: forward A-orbit of u avoids ran B}.

        With (A, B) = (W, V) this is the H_us core; with (V_1, W) the H_su core.
        """
        undecided = []

        def stop(u, _index):
            if in_kernel_kind is not None:
                hint = self._covering(in_kernel_kind, u)
                if hint:
                    return hint.hint_id
            paired = self._paired(total_kind, avoid_kind, u)
            if paired:
                return paired
            hit = in_range(self.rep, u)
            if hit:
                return _RANGE
            if hit is None:
                undecided.append(u)
            return None

        result = walk(self.rep, x, back_step, self.budget, stop)
        chain = tuple(result.chain)
        if result.end == WalkEnd.STOPPED:
            if result.reason == _RANGE:
                return Verdict(Status.OUT, RangeHit(back_step, chain, range_name), result.steps_taken)
            return Verdict(Status.IN, self._hint_certificate(result), 0)
        if result.end == WalkEnd.CYCLE and not undecided:
            return Verdict(Status.IN, OrbitCycle(back_step, chain, result.period), 0)
        if result.end == WalkEnd.DEAD:
            return Verdict(Status.OUT, DeadBackwardOrbit(back_step, chain), result.steps_taken + 1)

        # the backward chain did not settle it: look for the forward orbit entering the range
        forward = walk(self.rep, x, fwd_step, self.budget, lambda u, _i: _RANGE if in_range(self.rep, u) else None)
        if forward.end == WalkEnd.STOPPED:
            return Verdict(Status.OUT, RangeHit(fwd_step, tuple(forward.chain), range_name), forward.steps_taken)
        return Verdict.unknown(len(result.chain) + len(forward.chain))

    def w_kernel_core(self, x: VertexKey) -> Verdict:
        """x in the intersection of W^m K, K = intersection of ker V_i* W^j"""
        return self._kernel_core(
            x, "w_back", "w_fwd", in_ran_v, "V",
            HintKind.W_BACKWARD_TOTAL_IN_KERNEL, HintKind.W_BACKWARD_TOTAL, HintKind.FORWARD_W_AVOIDS_RAN_V,
        )

    def v1_kernel_core(self, x: VertexKey) -> Verdict:
        """x in the intersection of V_1^m K', K' = intersection of ker W* V_1^j"""
        return self._kernel_core(
            x, "v1_back", "v1_fwd", in_ran_w, "W",
            None, HintKind.V1_BACKWARD_TOTAL, HintKind.FORWARD_V1_AVOIDS_RAN_W,
        )

    def _strip_then_core(self, v: VertexKey, strip_step: str, total_kinds: Iterable[HintKind], core) -> Verdict:
        kinds = tuple(total_kinds)

        def stop(x, _index):
            for kind in kinds:
                hint = self._covering(kind, x)
                if hint:
                    return hint.hint_id
            return None

        strip = walk(self.rep, v, strip_step, self.budget, stop)
        if strip.end == WalkEnd.STOPPED:
            return Verdict(Status.OUT, self._hint_certificate(strip), 0)
        if strip.end == WalkEnd.CYCLE:
            return Verdict(Status.OUT, OrbitCycle(strip_step, tuple(strip.chain), strip.period), 0)
        if strip.end != WalkEnd.DEAD:
            return Verdict.unknown(len(strip.chain))

        inner = core(strip.last)
        if not inner.conclusive:
            return Verdict.unknown(len(strip.chain) + inner.spent)
        certificate = Stripped(strip_step, tuple(strip.chain), inner.certificate)
        if inner.status == Status.IN:
            return Verdict(Status.IN, certificate, max(strip.steps_taken, inner.horizon or 0))
        return Verdict(Status.OUT, certificate, inner.horizon)

    def _us_direct(self, v: VertexKey) -> Verdict:
        return self._strip_then_core(v, "v_back", (HintKind.V_BACKWARD_TOTAL,), self.w_kernel_core)

    def _su_direct(self, v: VertexKey) -> Verdict:
        return self._strip_then_core(
            v, "w_back", (HintKind.W_BACKWARD_TOTAL, HintKind.W_BACKWARD_TOTAL_IN_KERNEL), self.v1_kernel_core
        )

    # reducing transport along the backward V-chain

    def _test(self, component: ComponentId, v: VertexKey) -> Verdict:
        key = (component, v)
        if key in self._memo:
            return self._memo[key]
        direct = {
            ComponentId.UU: self._uu_direct,
            ComponentId.US: self._us_direct,
            ComponentId.SU: self._su_direct,
        }[component]
        verdict = direct(v)
        if not verdict.conclusive:
            verdict = self._transport(component, v, direct, verdict)
        self._memo[key] = verdict
        return verdict

    def _transport(self, component: ComponentId, v: VertexKey, direct, failed: Verdict) -> Verdict:
        ancestors = walk(self.rep, v, "v_back", self.budget)
        spent = failed.spent
        for index in range(1, len(ancestors.chain)):
            ancestor = ancestors.chain[index]
            verdict = self._memo.get((component, ancestor)) or direct(ancestor)
            if verdict.conclusive:
                self.logger.debug(
                    f"{component.value} at {self.rep.format_key(v)} transported from {self.rep.format_key(ancestor)}"
                )
                path = tuple(ancestors.chain[: index + 1])
                return Verdict(verdict.status, Transported(path, verdict.certificate), None)
            spent += verdict.spent
        return Verdict.unknown(spent)

    def in_uu(self, v: VertexKey) -> Verdict:
        return self._test(ComponentId.UU, v)

    def in_us(self, v: VertexKey) -> Verdict:
        return self._test(ComponentId.US, v)

    def in_su(self, v: VertexKey) -> Verdict:
        return self._test(ComponentId.SU, v)

    # Nica-covariance and the strip path of H_ss

    def nica_holds(self, v: VertexKey) -> bool:
        if self._nica is None:
            report = is_nica_covariant(self.rep, self.rep.seeds, settings.nica_depth)
            self._nica = report.passed
            self.logger.info(f"Nica-covariance of {self.rep.name} from seeds: {report.passed}")
        if not self._nica:
            return False
        return is_nica_covariant(self.rep, [v], settings.nica_depth).passed

    def strip_path(self, v: VertexKey) -> Optional[StripPath]:
        strip = walk(self.rep, v, "v_back", self.budget)
        if strip.end != WalkEnd.DEAD:
            return None
        shifts = walk(self.rep, strip.last, "w_back", self.budget)
        if shifts.end != WalkEnd.DEAD or in_ran_v(self.rep, shifts.last) is not False:
            return None
        return StripPath(v, tuple(strip.digits), shifts.steps_taken, shifts.last)

    def classify(self, v: VertexKey) -> Classification:
        try:
            if not self.rep.contains(v):
                raise ValueError(f"{self.rep.format_key(v)} is not a vertex of {self.rep.name}")
            verdicts = {component: self._test(component, v) for component in DIRECT}
            return self.resolve(v, verdicts)
        except Exception as e:
            self.logger.error(f"Error classifying {v!r}: {str(e)}")
            raise

    def resolve(self, v: VertexKey, verdicts: Dict[ComponentId, Verdict]) -> Classification:
        statuses = [verdicts[c].status for c in DIRECT]
        ins = [c for c in DIRECT if verdicts[c].status == Status.IN]
        if len(ins) > 1:
            self.logger.warning(f"{self.rep.format_key(v)} is In for {[c.value for c in ins]}")

        if all(status == Status.OUT for status in statuses):
            verdicts[ComponentId.WS] = Verdict(Status.IN, _complement(verdicts, DIRECT), _max_horizon(verdicts))
            resolved = ComponentId.WS
            nica = self.nica_holds(v)
            if nica:
                path = self.strip_path(v)
                if path is not None:
                    verdicts[ComponentId.SS] = Verdict(Status.IN, path, None)
                    resolved = ComponentId.SS
                else:
                    self.logger.warning(f"No strip path for {self.rep.format_key(v)} within budget {self.budget}")
            return Classification(v, verdicts, resolved, self.budget, nica)

        if ins:
            verdicts[ComponentId.WS] = Verdict(Status.OUT, _complement(verdicts, ins), _max_horizon(verdicts))
        else:
            verdicts[ComponentId.WS] = Verdict.unknown(sum(verdicts[c].spent for c in DIRECT))
        resolved = None
        if len(ins) == 1 and statuses.count(Status.OUT) == 2:
            resolved = ins[0]
        if resolved == ComponentId.SU:
            # observation only, never a verdict
            self.logger.debug(f"{self.rep.format_key(v)} in su, Nica-covariant nearby: {self.nica_holds(v)}")
        return Classification(v, verdicts, resolved, self.budget)


def _complement(verdicts: Dict[ComponentId, Verdict], components: Iterable[ComponentId]) -> Complement:
    return Complement(tuple((c, verdicts[c].status, verdicts[c].certificate) for c in components))


def _max_horizon(verdicts: Dict[ComponentId, Verdict]) -> Optional[int]:
    horizons = [verdicts[c].horizon for c in DIRECT]
    if any(h is None for h in horizons):
        return None
    return max(horizons)


def in_uu(rep: AtomicRep, v: VertexKey, budget: int) -> Verdict:
    return ClassificationSession(rep, budget).in_uu(v)


def in_us(rep: AtomicRep, v: VertexKey, budget: int) -> Verdict:
    return ClassificationSession(rep, budget).in_us(v)


def in_su(rep: AtomicRep, v: VertexKey, budget: int) -> Verdict:
    return ClassificationSession(rep, budget).in_su(v)


def classify(rep: AtomicRep, v: VertexKey, budget: int) -> Classification:
    return ClassificationSession(rep, budget).classify(v)


def classify_many(rep: AtomicRep, vertices: Iterable[VertexKey], budget: int) -> List[Classification]:
    session = ClassificationSession(rep, budget)
    return [session.classify(v) for v in vertices]
