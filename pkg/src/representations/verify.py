"""Exact checks of the defining relations, Nica-covariance and V-orbit types."""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from ..config import settings
from ..semigroup.errors import WindowTooLarge
from ..semigroup.logger_config import setup_logger
from .atomic import Arrow, AtomicRep, Gap, Step, VertexKey, generator_name
from .hints import HintKind, KeySetRegion
from .orbits import WalkEnd, walk

logger = setup_logger('verify')


@dataclass
class Violation:
    vertex: str
    relation: str
    expected: str
    found: str

    def to_dict(self) -> Dict:
        return {
            "vertex": self.vertex,
            "relation": self.relation,
            "expected": self.expected,
            "found": self.found,
        }


@dataclass
class Report:
    passed: bool
    explored: int
    violation: Optional[Violation] = None
    skipped: int = 0

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "explored": self.explored,
            "skipped": self.skipped,
            "violation": self.violation.to_dict() if self.violation else None,
        }


def explore(rep: AtomicRep, seeds: Iterable[VertexKey], depth: int, cap: Optional[int] = None) -> Dict[VertexKey, int]:
    """Breadth-first closure of `seeds` under all arrows; vertex -> distance"""
    cap = settings.vertex_cap if cap is None else cap
    distance: Dict[VertexKey, int] = {}
    queue = deque()
    for seed in seeds:
        if seed not in distance:
            distance[seed] = 0
            queue.append(seed)
    while queue:
        v = queue.popleft()
        if distance[v] >= depth:
            continue
        for u in rep.neighbours(v):
            if u in distance:
                continue
            distance[u] = distance[v] + 1
            if len(distance) > cap:
                raise WindowTooLarge(f"More than {cap} vertices within distance {depth}")
            queue.append(u)
    return distance


def _render(rep: AtomicRep, step: Step) -> str:
    if isinstance(step, Arrow):
        if step.phase.is_one:
            return rep.format_key(step.target)
        return f"{step.phase} * {rep.format_key(step.target)}"
    return str(step)


def _then(rep: AtomicRep, first: Step, gen: int) -> Step:
    """Apply generator `gen` after the arrow `first`"""
    if not isinstance(first, Arrow):
        return first
    second = rep.forward(gen, first.target)
    if not isinstance(second, Arrow):
        return second
    return Arrow(second.target, first.phase * second.phase)


def _relation_checks(rep: AtomicRep, v) -> Iterable:
    n = rep.n
    for k in range(1, n):
        yield f"WV_{k}=V_{k + 1}", _then(rep, rep.v_of(k, v), 0), rep.v_of(k + 1, v)
    yield "WV_n=V_1W", _then(rep, rep.v_of(n, v), 0), _then(rep, rep.w_of(v), 1)


def _check_vertex(rep: AtomicRep, v) -> Optional[Violation]:
    key = rep.format_key(v)

    for name, lhs, rhs in _relation_checks(rep, v):
        if lhs is Gap.UNEXPLORED or rhs is Gap.UNEXPLORED:
            continue
        if lhs != rhs:
            return Violation(key, name, _render(rep, rhs), _render(rep, lhs))

    for gen in rep.generators():
        label = generator_name(gen)
        forward = rep.forward(gen, v)
        if forward is Gap.ZERO:
            return Violation(key, f"total-{label}", "an arrow", "zero")
        if isinstance(forward, Arrow):
            back = rep.backward(gen, forward.target)
            if back is not Gap.UNEXPLORED and back != Arrow(v, forward.phase):
                return Violation(key, f"injective-{label}", _render(rep, Arrow(v, forward.phase)), _render(rep, back))

        backward = rep.backward(gen, v)
        if isinstance(backward, Arrow):
            again = rep.forward(gen, backward.target)
            if again is not Gap.UNEXPLORED and again != Arrow(v, backward.phase):
                return Violation(key, f"consistent-{label}", _render(rep, Arrow(v, backward.phase)), _render(rep, again))

    hits = [k for k in range(1, rep.n + 1) if isinstance(rep.v_back(k, v), Arrow)]
    if len(hits) > 1:
        return Violation(key, "disjoint-ranges", "at most one V_k", ",".join(f"V{k}" for k in hits))
    return None


def verify_relations(rep: AtomicRep, seeds: Iterable[VertexKey], depth: int) -> Report:
    """Check relations, injectivity, range disjointness and adjoint consistency"""
    region = explore(rep, seeds, depth)
    logger.info(f"Verifying {rep.name} on {len(region)} vertices (depth {depth})")
    for v in region:
        violation = _check_vertex(rep, v)
        if violation:
            logger.info(f"Violation at {violation.vertex}: {violation.relation}")
            return Report(False, len(region), violation)
    return Report(True, len(region))


def _adjoint(step: Step) -> Step:
    if isinstance(step, Arrow):
        return Arrow(step.target, step.phase.conj())
    return step


def nica_sides(rep: AtomicRep, v):
    """(W* V_1 e_v, V_n W* e_v) as arrows or gaps"""
    first = rep.v_of(1, v)
    if isinstance(first, Arrow):
        back = _adjoint(rep.w_back(first.target))
        lhs = Arrow(back.target, first.phase * back.phase) if isinstance(back, Arrow) else back
    else:
        lhs = first
    back = _adjoint(rep.w_back(v))
    if isinstance(back, Arrow):
        after = rep.v_of(rep.n, back.target)
        rhs = Arrow(after.target, back.phase * after.phase) if isinstance(after, Arrow) else after
    else:
        rhs = back
    return lhs, rhs


def is_nica_covariant(rep: AtomicRep, seeds: Iterable[VertexKey], depth: int) -> Report:
    """Check W* V_1 = V_n W* on every explored basis vector"""
    region = explore(rep, seeds, depth)
    skipped = 0
    for v in region:
        lhs, rhs = nica_sides(rep, v)
        if lhs is Gap.UNEXPLORED or rhs is Gap.UNEXPLORED:
            skipped += 1
            continue
        if lhs != rhs:
            violation = Violation(rep.format_key(v), "W*V_1=V_nW*", _render(rep, rhs), _render(rep, lhs))
            return Report(False, len(region), violation, skipped)
    return Report(True, len(region), None, skipped)


@dataclass
class OrbitType:
    kind: str  # left-regular | cycle | inductive | unknown
    terminal: Optional[VertexKey] = None
    period: Optional[int] = None
    chain: List[VertexKey] = field(default_factory=list)


def v_orbit_type(rep: AtomicRep, vertex: VertexKey, budget: int) -> OrbitType:
    """Type of the backward V-chain through `vertex`"""
    hints = [h for h in rep.hints if h.kind == HintKind.V_BACKWARD_TOTAL]

    def stop(x, _index):
        for hint in hints:
            if hint.covers(x):
                return hint.hint_id
        return None

    result = walk(rep, vertex, "v_back", budget, stop)
    if result.end == WalkEnd.DEAD:
        return OrbitType("left-regular", terminal=result.last, chain=result.chain)
    if result.end == WalkEnd.CYCLE:
        return OrbitType("cycle", period=result.period, chain=result.chain)
    if result.end == WalkEnd.STOPPED:
        hint = rep.hint_by_id(result.reason)
        if isinstance(hint.region, KeySetRegion):
            inner = walk(rep, result.last, "v_back", len(hint.region.keys) + 1)
            if inner.end == WalkEnd.CYCLE:
                return OrbitType("cycle", period=inner.period, chain=result.chain + inner.chain[1:])
        return OrbitType("inductive", chain=result.chain)
    return OrbitType("unknown", chain=result.chain)
