"""Verdicts and the finite evidence behind them."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ..config import settings
from ..representations.atomic import Arrow, AtomicRep, Gap, VertexKey
from ..representations.hints import validate_hint
from ..representations.orbits import follows, in_ran_v, in_ran_w, take_step


class Status(Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


class ComponentId(Enum):
    UU = "uu"
    US = "us"
    SU = "su"
    WS = "ws"
    SS = "ss"


class Certificate:
    kind = "certificate"

    def replay(self, rep: AtomicRep) -> bool:
        raise NotImplementedError

    def to_dict(self, rep: AtomicRep) -> Dict:
        raise NotImplementedError


def _keys(rep: AtomicRep, chain) -> List[str]:
    return [rep.format_key(v) for v in chain]


@dataclass(frozen=True)
class DeadBackwardOrbit(Certificate):
    """The walk stops: the last vertex has no preimage"""
    step: str
    chain: Tuple[VertexKey, ...]
    kind = "dead-backward-orbit"

    def replay(self, rep: AtomicRep) -> bool:
        return follows(rep, self.step, list(self.chain)) and take_step(rep, self.step, self.chain[-1]) is Gap.ZERO

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {"kind": self.kind, "step": self.step, "chain": _keys(rep, self.chain)}


@dataclass(frozen=True)
class OrbitCycle(Certificate):
    step: str
    chain: Tuple[VertexKey, ...]
    period: int
    kind = "orbit-cycle"

    def replay(self, rep: AtomicRep) -> bool:
        if not follows(rep, self.step, list(self.chain)):
            return False
        result = take_step(rep, self.step, self.chain[-1])
        return isinstance(result, Arrow) and result.target == self.chain[-self.period]

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {"kind": self.kind, "step": self.step, "chain": _keys(rep, self.chain), "period": self.period}


@dataclass(frozen=True)
class HintRegion(Certificate):
    """The walk reached `entry`, which every listed hint covers"""
    hint_ids: Tuple[str, ...]
    entry: VertexKey
    step: str
    chain: Tuple[VertexKey, ...]
    kind = "hint-region"

    def replay(self, rep: AtomicRep) -> bool:
        if not follows(rep, self.step, list(self.chain)) or self.chain[-1] != self.entry:
            return False
        for hint_id in self.hint_ids:
            hint = rep.hint_by_id(hint_id)
            if hint is None or validate_hint(rep, hint, self.entry, settings.hint_check_depth):
                return False
        return True

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {
            "kind": self.kind,
            "hints": list(self.hint_ids),
            "entry": rep.format_key(self.entry),
            "step": self.step,
            "chain": _keys(rep, self.chain),
        }


@dataclass(frozen=True)
class RangeHit(Certificate):
    """The walk reaches a vertex in the range of V (`ran="V"`) or of W"""
    step: str
    chain: Tuple[VertexKey, ...]
    ran: str
    kind = "range-hit"

    def replay(self, rep: AtomicRep) -> bool:
        test = in_ran_v if self.ran == "V" else in_ran_w
        return follows(rep, self.step, list(self.chain)) and test(rep, self.chain[-1]) is True

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {"kind": self.kind, "step": self.step, "chain": _keys(rep, self.chain), "range": self.ran}


@dataclass(frozen=True)
class Stripped(Certificate):
    """A backward chain ending at a vertex outside the step's range, then `inner` there"""
    step: str
    chain: Tuple[VertexKey, ...]
    inner: Certificate
    kind = "stripped"

    def replay(self, rep: AtomicRep) -> bool:
        if not follows(rep, self.step, list(self.chain)):
            return False
        return take_step(rep, self.step, self.chain[-1]) is Gap.ZERO and self.inner.replay(rep)

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {
            "kind": self.kind,
            "step": self.step,
            "chain": _keys(rep, self.chain),
            "inner": self.inner.to_dict(rep),
        }


@dataclass(frozen=True)
class StripPath(Certificate):
    """vertex = V_mu W^m core with core in the kernels of every V_k* and of W*"""
    vertex: VertexKey
    mu: Tuple[int, ...]
    m: int
    core: VertexKey
    kind = "strip-path"

    def replay(self, rep: AtomicRep) -> bool:
        if in_ran_v(rep, self.core) is not False or in_ran_w(rep, self.core) is not False:
            return False
        current = self.core
        for _ in range(self.m):
            step = rep.w_of(current)
            if not isinstance(step, Arrow):
                return False
            current = step.target
        for k in reversed(self.mu):
            step = rep.v_of(k, current)
            if not isinstance(step, Arrow):
                return False
            current = step.target
        return current == self.vertex

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {
            "kind": self.kind,
            "vertex": rep.format_key(self.vertex),
            "mu": list(self.mu),
            "m": self.m,
            "core": rep.format_key(self.core),
        }


@dataclass(frozen=True)
class Transported(Certificate):
    """Verdict proved at a V-ancestor and carried along the backward V-chain"""
    path: Tuple[VertexKey, ...]
    inner: Certificate
    kind = "transported"

    def replay(self, rep: AtomicRep) -> bool:
        return follows(rep, "v_back", list(self.path)) and self.inner.replay(rep)

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {"kind": self.kind, "path": _keys(rep, self.path), "inner": self.inner.to_dict(rep)}


@dataclass(frozen=True)
class Complement(Certificate):
    """WS decided from the direct components: the three Outs for In, the In for Out"""
    parts: Tuple[Tuple["ComponentId", "Status", Certificate], ...]
    kind = "complement"

    def replay(self, rep: AtomicRep) -> bool:
        return bool(self.parts) and all(certificate.replay(rep) for _, _, certificate in self.parts)

    def to_dict(self, rep: AtomicRep) -> Dict:
        return {
            "kind": self.kind,
            "parts": [
                {"component": component.value, "status": status.value, "certificate": certificate.to_dict(rep)}
                for component, status, certificate in self.parts
            ],
        }


@dataclass
class Verdict:
    status: Status
    certificate: Optional[Certificate] = None
    horizon: Optional[int] = None  # truncation depth from which the finite formula shows the verdict
    spent: int = 0

    @classmethod
    def unknown(cls, spent: int) -> "Verdict":
        return cls(Status.UNKNOWN, None, None, spent)

    @property
    def conclusive(self) -> bool:
        return self.status != Status.UNKNOWN

    def to_dict(self, rep: AtomicRep) -> Dict:
        record = {"status": self.status.value, "horizon": self.horizon}
        if self.certificate is not None:
            record["certificate"] = self.certificate.to_dict(rep)
        else:
            record["spent"] = self.spent
        return record


def replay_certificate(rep: AtomicRep, certificate: Certificate) -> bool:
    """Re-walk a certificate against the representation's arrows"""
    return certificate.replay(rep)
