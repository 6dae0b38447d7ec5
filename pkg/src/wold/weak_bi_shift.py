"""Regional checks: the weak bi-shift predicate and discovered wandering vectors."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from ..representations.atomic import AtomicRep, Gap
from ..representations.orbits import v_preimage
from ..representations.verify import explore
from ..semigroup.logger_config import setup_logger
from .certificates import Status
from .classifier import ClassificationSession

logger = setup_logger('weak_bi_shift')


@dataclass
class BiShiftReport:
    status: str  # pass | fail | unknown
    explored: int
    witnesses: List[Dict] = field(default_factory=list)
    undecided: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "status": self.status,
            "explored": self.explored,
            "witnesses": self.witnesses,
            "undecided": self.undecided,
        }


def weak_bi_shift_check(
    rep: AtomicRep,
    seeds: Iterable,
    budget: int,
    radius: int = 2,
    session: Optional[ClassificationSession] = None,
) -> BiShiftReport:
    """No explored vertex may carry a unitary piece of the three restricted operators.

    Checked per vertex: W on the kernel set K, V_1 on the kernel set K', and the
    row {V_2, ..., V_n, V_1 W}.
    """
    session = session or ClassificationSession(rep, budget)
    region = sorted(explore(rep, seeds, radius), key=rep.sort_key)
    witnesses, undecided = [], []
    tests = (
        ("W-unitary-on-K", session.w_kernel_core),
        ("V1-unitary-on-K'", session.v1_kernel_core),
        ("row-unitary", session.in_uu),
    )
    for x in region:
        for name, test in tests:
            verdict = test(x)
            if verdict.status == Status.IN:
                witnesses.append({"vertex": rep.format_key(x), "part": name})
            elif verdict.status == Status.UNKNOWN:
                undecided.append(rep.format_key(x))

    if witnesses:
        status = "fail"
    elif undecided:
        status = "unknown"
    else:
        status = "pass"
    logger.info(f"Weak bi-shift check on {len(region)} vertices of {rep.name}: {status}")
    return BiShiftReport(status, len(region), witnesses, sorted(set(undecided)))


@dataclass
class WanderingReport:
    wandering: List[str]
    w_wandering: List[str]

    def to_dict(self) -> Dict:
        return {"wandering": self.wandering, "w_wandering": self.w_wandering}


def wandering_vertices(rep: AtomicRep, seeds: Iterable, depth: int) -> WanderingReport:
    """Vertices in every ker V_k* and vertices in ker W*, over the explored region"""
    region = sorted(explore(rep, seeds, depth), key=rep.sort_key)
    wandering = [rep.format_key(x) for x in region if v_preimage(rep, x)[0] is Gap.ZERO]
    w_wandering = [rep.format_key(x) for x in region if rep.w_back(x) is Gap.ZERO]
    return WanderingReport(wandering, w_wandering)
