"""W induced from the V-structure by the add-one rule.

Writing e_x = V_{k_1} V_{k_2} ... V_{k_m} e_{x_m} along the backward V-address,
the relations force W e_x = V_1^{m-1} V_{k_m + 1} e_{x_m} at the first digit
k_m != n.  An all-n address ending at a wandering vertex needs the unitary given
on the wandering vectors.
"""
from typing import Dict, Optional, Tuple

from ..config import settings
from ..semigroup.errors import AddressCycleAllN, NoCarryTarget
from .atomic import Arrow, AtomicRep, Gap, Step, VertexKey
from .orbits import v_preimage
from .phase import ONE, Phase

WanderingUnitary = Dict[VertexKey, Tuple[VertexKey, Phase]]


def _rebuild(rep: AtomicRep, start: VertexKey, first: int, repeat: int, times: int) -> Step:
    """Apply V_first, then V_repeat `times` times; returns the accumulated arrow"""
    step = rep.v_of(first, start)
    if not isinstance(step, Arrow):
        return step
    target, phase = step.target, step.phase
    for _ in range(times):
        step = rep.v_of(repeat, target)
        if not isinstance(step, Arrow):
            return step
        target, phase = step.target, phase * step.phase
    return Arrow(target, phase)


def _repeat(rep: AtomicRep, start: VertexKey, start_phase: Phase, letter: int, times: int) -> Step:
    target, phase = start, start_phase
    for _ in range(times):
        step = rep.v_of(letter, target)
        if not isinstance(step, Arrow):
            return step
        target, phase = step.target, phase * step.phase
    return Arrow(target, phase)


def _strip(rep: AtomicRep, vertex: VertexKey, skip_digit: int, limit: int):
    """Strip V-digits equal to `skip_digit` from `vertex`.

    Returns (status, digits, terminal, stripped_phase) with status one of
    "digit" (stopped at another digit), "wandering", "cycle", "unexplored".
    """
    seen = {vertex}
    current = vertex
    stripped = ONE
    digits = []
    for _ in range(limit):
        step, k = v_preimage(rep, current)
        if step is Gap.ZERO:
            return "wandering", digits, current, stripped
        if step is Gap.UNEXPLORED:
            return "unexplored", digits, current, stripped
        digits.append(k)
        stripped = stripped * step.phase
        current = step.target
        if k != skip_digit:
            return "digit", digits, current, stripped
        if current in seen:
            return "cycle", digits, current, stripped
        seen.add(current)
    raise NoCarryTarget(f"No digit other than {skip_digit} within {limit} steps")


def induce_w(
    rep: AtomicRep,
    vertex: VertexKey,
    wandering_unitary: Optional[WanderingUnitary] = None,
    address_limit: Optional[int] = None,
) -> Step:
    """W e_vertex computed from the V-arrows of `rep` only"""
    limit = settings.address_limit if address_limit is None else address_limit
    status, digits, terminal, stripped = _strip(rep, vertex, rep.n, limit)
    if status == "unexplored":
        return Gap.UNEXPLORED
    if status == "cycle":
        raise AddressCycleAllN(f"Backward address of {rep.format_key(vertex)} cycles through digit {rep.n} only")
    if status == "digit":
        built = _rebuild(rep, terminal, digits[-1] + 1, 1, len(digits) - 1)
    else:
        if not wandering_unitary or terminal not in wandering_unitary:
            raise NoCarryTarget(f"No wandering image for {rep.format_key(terminal)}")
        target, phase = wandering_unitary[terminal]
        built = _repeat(rep, target, phase, 1, len(digits))
    if not isinstance(built, Arrow):
        return built
    return Arrow(built.target, built.phase / stripped)


def induce_w_back(
    rep: AtomicRep,
    vertex: VertexKey,
    wandering_unitary: Optional[WanderingUnitary] = None,
    address_limit: Optional[int] = None,
) -> Step:
    """Adjoint of the induced W: the arrow landing on `vertex`, or ZERO"""
    limit = settings.address_limit if address_limit is None else address_limit
    status, digits, terminal, stripped = _strip(rep, vertex, 1, limit)
    if status == "unexplored":
        return Gap.UNEXPLORED
    if status == "cycle":
        return Gap.ZERO
    if status == "digit":
        built = _rebuild(rep, terminal, digits[-1] - 1, rep.n, len(digits) - 1)
        if not isinstance(built, Arrow):
            return built
        return Arrow(built.target, stripped / built.phase)

    preimage = None
    for source, (target, phase) in (wandering_unitary or {}).items():
        if target == terminal:
            preimage = (source, phase)
            break
    if preimage is None:
        return Gap.ZERO
    source, phase = preimage
    built = _repeat(rep, source, ONE, rep.n, len(digits))
    if not isinstance(built, Arrow):
        return built
    return Arrow(built.target, phase * stripped / built.phase)


class InducedRep(AtomicRep):
    """Base for representations whose W is induced; subclasses give V only"""

    wandering_unitary: Optional[WanderingUnitary] = None

    def w_of(self, v) -> Step:
        return induce_w(self, v, self.wandering_unitary)

    def w_back(self, v) -> Step:
        return induce_w_back(self, v, self.wandering_unitary)
