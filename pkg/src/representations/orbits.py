"""Deterministic single-step maps and bounded orbit walks.

Ranges of the V_k are pairwise disjoint and every map is injective, so each
backward map has at most one answer.  A walk follows one named step map until it
dies, revisits a vertex, leaves the explored patch, runs out of budget or a stop
predicate fires.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from .atomic import Arrow, AtomicRep, Gap, Step, VertexKey


def v_preimage(rep: AtomicRep, x: VertexKey) -> Tuple[Step, int]:
    """(arrow, k) with x = V_k arrow.target, or (gap, 0)"""
    unexplored = False
    for k in range(1, rep.n + 1):
        step = rep.v_back(k, x)
        if isinstance(step, Arrow):
            return step, k
        if step is Gap.UNEXPLORED:
            unexplored = True
    return (Gap.UNEXPLORED if unexplored else Gap.ZERO), 0


def wv_preimage(rep: AtomicRep, x: VertexKey) -> Tuple[Step, int]:
    """Backward step of the row {V_2, ..., V_n, V_1 W}.

    Returns the index of the member whose range holds x: k >= 2 for V_k and 1
    for V_1 W.
    """
    step, k = v_preimage(rep, x)
    if not isinstance(step, Arrow) or k != 1:
        return step, k
    inner = rep.w_back(step.target)
    if isinstance(inner, Arrow):
        return Arrow(inner.target, step.phase * inner.phase), 1
    return inner, 0


def in_ran_v(rep: AtomicRep, x: VertexKey) -> Optional[bool]:
    step, _ = v_preimage(rep, x)
    if step is Gap.UNEXPLORED:
        return None
    return isinstance(step, Arrow)


def in_ran_w(rep: AtomicRep, x: VertexKey) -> Optional[bool]:
    step = rep.w_back(x)
    if step is Gap.UNEXPLORED:
        return None
    return isinstance(step, Arrow)


def _v_back_any(rep, x):
    return v_preimage(rep, x)[0]


def _wv_back(rep, x):
    return wv_preimage(rep, x)[0]


def _w_then_v1_back(rep, x):
    """(W V_1)* = V_1* W*; it coincides with (V_1 W)* when n = 1"""
    first = rep.w_back(x)
    if not isinstance(first, Arrow):
        return first
    second = rep.v_back(1, first.target)
    if not isinstance(second, Arrow):
        return second
    return Arrow(second.target, first.phase * second.phase)


STEPS: Dict[str, Callable[[AtomicRep, VertexKey], Step]] = {
    "v_back": _v_back_any,
    "wv_back": _wv_back,
    "w_v1_back": _w_then_v1_back,
    "w_back": lambda rep, x: rep.w_back(x),
    "v1_back": lambda rep, x: rep.v_back(1, x),
    "w_fwd": lambda rep, x: rep.w_of(x),
    "v1_fwd": lambda rep, x: rep.v_of(1, x),
}


def take_step(rep: AtomicRep, name: str, x: VertexKey) -> Step:
    return STEPS[name](rep, x)


class WalkEnd(Enum):
    DEAD = "dead"
    CYCLE = "cycle"
    UNEXPLORED = "unexplored"
    BUDGET = "budget"
    STOPPED = "stopped"


@dataclass
class Walk:
    step: str
    chain: List[VertexKey]
    end: WalkEnd
    period: int = 0
    reason: str = ""
    digits: List[int] = field(default_factory=list)

    @property
    def last(self) -> VertexKey:
        return self.chain[-1]

    @property
    def steps_taken(self) -> int:
        return len(self.chain) - 1


StopRule = Callable[[VertexKey, int], Optional[str]]


def walk(
    rep: AtomicRep,
    start: VertexKey,
    step: str,
    budget: int,
    stop: Optional[StopRule] = None,
) -> Walk:
    """Follow `step` from `start`, expanding at most `budget` distinct vertices.

    `stop(x, index)` is consulted at every vertex before it is expanded; a
    non-empty string ends the walk as STOPPED with that reason.
    """
    chain = [start]
    seen = {start: 0}
    digits: List[int] = []
    current = start
    while True:
        if stop is not None:
            reason = stop(current, len(chain) - 1)
            if reason:
                return Walk(step, chain, WalkEnd.STOPPED, reason=reason, digits=digits)
        if len(chain) > budget:
            return Walk(step, chain, WalkEnd.BUDGET, digits=digits)
        if step == "v_back":
            result, k = v_preimage(rep, current)
            if isinstance(result, Arrow):
                digits.append(k)
        else:
            result = take_step(rep, step, current)
        if result is Gap.ZERO:
            return Walk(step, chain, WalkEnd.DEAD, digits=digits)
        if result is Gap.UNEXPLORED:
            return Walk(step, chain, WalkEnd.UNEXPLORED, digits=digits)
        target = result.target
        if target in seen:
            return Walk(step, chain, WalkEnd.CYCLE, period=len(chain) - seen[target], digits=digits)
        seen[target] = len(chain)
        chain.append(target)
        current = target


def follows(rep: AtomicRep, step: str, chain: List[VertexKey]) -> bool:
    """Every consecutive pair of `chain` is one `step` apart"""
    for here, there in zip(chain, chain[1:]):
        result = take_step(rep, step, here)
        if not isinstance(result, Arrow) or result.target != there:
            return False
    return True
