"""Orbit hints: declared facts about infinite orbits, spot-checked before use."""
import operator
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, FrozenSet, Iterable, Optional, Tuple

from .atomic import Arrow, AtomicRep, Gap, VertexKey
from .orbits import in_ran_v, in_ran_w, take_step


class HintKind(Enum):
    WV_BACKWARD_TOTAL = "WvBackwardTotal"
    W_BACKWARD_TOTAL_IN_KERNEL = "WBackwardTotalInKernel"
    V_BACKWARD_TOTAL = "VBackwardTotal"
    FORWARD_W_AVOIDS_RAN_V = "ForwardWAvoidsRanV"
    FORWARD_V1_AVOIDS_RAN_W = "ForwardV1AvoidsRanW"
    W_BACKWARD_TOTAL = "WBackwardTotal"
    V1_BACKWARD_TOTAL = "V1BackwardTotal"

    @classmethod
    def parse(cls, text: str) -> "HintKind":
        for kind in cls:
            if kind.value.lower() == text.lower():
                return kind
        raise ValueError(f"Unknown hint kind: {text}")


class Region:
    description = "?"

    def contains(self, v: VertexKey) -> bool:
        raise NotImplementedError


class AllRegion(Region):
    description = "all"

    def contains(self, v: VertexKey) -> bool:
        return True


class KeySetRegion(Region):
    def __init__(self, keys: Iterable[VertexKey], description: Optional[str] = None):
        self.keys: FrozenSet = frozenset(keys)
        self.description = description or "{" + ",".join(sorted(str(k) for k in self.keys)) + "}"

    def contains(self, v: VertexKey) -> bool:
        return v in self.keys


class PredicateRegion(Region):
    def __init__(self, description: str, predicate: Callable[[VertexKey], bool]):
        self.description = description
        self.predicate = predicate

    def contains(self, v: VertexKey) -> bool:
        return bool(self.predicate(v))


COORDINATE_KEY = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_BOUND = re.compile(r"^([rt])\s*(>=|<=|>|<|==)\s*(-?\d+)$")
_COMPARE = {">=": operator.ge, "<=": operator.le, ">": operator.gt, "<": operator.lt, "==": operator.eq}


def coordinates(v: VertexKey) -> Optional[Tuple[int, int]]:
    """(r, t) of a coordinate vertex, given as a pair or as its `(r,t)` key"""
    if isinstance(v, tuple) and len(v) == 2 and all(isinstance(c, int) for c in v):
        return v
    if isinstance(v, str):
        match = COORDINATE_KEY.match(v.strip())
        if match:
            return int(match.group(1)), int(match.group(2))
    return None


def bound_region(text: str) -> Optional[PredicateRegion]:
    """`r>=0`, `t<3`, ... on coordinate vertices; None when `text` is not such a bound"""
    match = _BOUND.match(text.strip())
    if not match:
        return None
    axis = 0 if match.group(1) == "r" else 1
    compare, bound = _COMPARE[match.group(2)], int(match.group(3))

    def predicate(v: VertexKey) -> bool:
        point = coordinates(v)
        return point is not None and compare(point[axis], bound)

    return PredicateRegion(text.strip().replace(" ", ""), predicate)


def parse_region(text: str) -> Region:
    """`all`, an explicit `{a,b,c}` key set or a coordinate bound such as `t>=0`"""
    text = text.strip()
    if text == "all":
        return AllRegion()
    bound = bound_region(text)
    if bound is not None:
        return bound
    if text.startswith("{") and text.endswith("}"):
        body = text[1:-1].strip()
        keys = [key.strip() for key in body.split(",") if key.strip()] if body else []
        return KeySetRegion(keys, text)
    raise ValueError(f"Unknown region: {text}")


@dataclass(frozen=True)
class Hint:
    kind: HintKind
    region: Region
    hint_id: str

    def covers(self, v: VertexKey) -> bool:
        return self.region.contains(v)


# step map whose totality and closure each kind promises
_BACKWARD_STEP = {
    HintKind.WV_BACKWARD_TOTAL: "wv_back",
    HintKind.V_BACKWARD_TOTAL: "v_back",
    HintKind.W_BACKWARD_TOTAL: "w_back",
    HintKind.V1_BACKWARD_TOTAL: "v1_back",
    HintKind.W_BACKWARD_TOTAL_IN_KERNEL: "w_back",
}


def _forward_avoids(rep: AtomicRep, hint: Hint, x, depth: int, step: str, in_range) -> Optional[str]:
    """Forward orbit from x stays in the region and never meets the range"""
    current = x
    for j in range(depth + 1):
        if not hint.covers(current):
            return f"{rep.format_key(current)} left the region after {j} steps"
        if in_range(rep, current):
            return f"{rep.format_key(current)} lies in the excluded range"
        result = take_step(rep, step, current)
        if not isinstance(result, Arrow):
            return None
        current = result.target
    return None


def validate_hint(rep: AtomicRep, hint: Hint, entry: VertexKey, depth: int) -> Optional[str]:
    """Spot-check the hint's promise from `entry`; returns a violation or None.

    Unexplored arrows end the check without a verdict against the hint.
    """
    if not hint.covers(entry):
        return f"{rep.format_key(entry)} is outside region {hint.region.description}"

    if hint.kind == HintKind.FORWARD_W_AVOIDS_RAN_V:
        return _forward_avoids(rep, hint, entry, depth, "w_fwd", in_ran_v)
    if hint.kind == HintKind.FORWARD_V1_AVOIDS_RAN_W:
        return _forward_avoids(rep, hint, entry, depth, "v1_fwd", in_ran_w)

    step = _BACKWARD_STEP[hint.kind]
    current = entry
    for j in range(depth):
        if hint.kind == HintKind.W_BACKWARD_TOTAL_IN_KERNEL:
            # membership in K: the forward W-orbit avoids every ran V_k
            problem = _forward_avoids_plain(rep, current, depth)
            if problem:
                return problem
        result = take_step(rep, step, current)
        if result is Gap.UNEXPLORED:
            return None
        if result is Gap.ZERO:
            return f"{step} is not defined at {rep.format_key(current)} ({j} steps from entry)"
        current = result.target
        if not hint.covers(current):
            return f"{step} leaves the region at {rep.format_key(current)}"
    return None


def _forward_avoids_plain(rep: AtomicRep, x, depth: int) -> Optional[str]:
    current = x
    for _ in range(depth + 1):
        if in_ran_v(rep, current):
            return f"{rep.format_key(current)} lies in a range of V"
        result = rep.w_of(current)
        if not isinstance(result, Arrow):
            return None
        current = result.target
    return None
