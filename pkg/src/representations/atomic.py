"""Atomic isometric representations of O_n as phase-labelled graph actions.

A representation maps every basis vector e_v to a unimodular multiple of
another basis vector: W e_v = phase e_{tau(v)} and V_k e_v = phase e_{pi_k(v)}.
Backward maps answer the adjoint questions: `w_back(u)` is the arrow that lands
on u (carrying the forward arrow's phase) or a gap.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from .phase import ONE, Phase

VertexKey = Hashable
W_GEN = 0  # generator code for W; k >= 1 is V_k


class Gap(Enum):
    ZERO = "zero"              # the adjoint annihilates
    UNEXPLORED = "unexplored"  # outside a finite patch, nothing is known

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Arrow:
    target: VertexKey
    phase: Phase = ONE


Step = Union[Arrow, Gap]


def generator_name(gen: int) -> str:
    return "W" if gen == W_GEN else f"V{gen}"


class AtomicRep(ABC):
    """Base class: subclasses provide the four arrow maps and key handling."""

    def __init__(self, n: int, name: str, hints: Sequence = (), seeds: Sequence[VertexKey] = ()):
        self.n = n
        self.name = name
        self.hints = tuple(hints)
        self.seeds = tuple(seeds)

    @abstractmethod
    def contains(self, v: VertexKey) -> bool:
        ...

    @abstractmethod
    def w_of(self, v: VertexKey) -> Step:
        ...

    @abstractmethod
    def v_of(self, k: int, v: VertexKey) -> Step:
        ...

    @abstractmethod
    def w_back(self, v: VertexKey) -> Step:
        ...

    @abstractmethod
    def v_back(self, k: int, v: VertexKey) -> Step:
        ...

    def format_key(self, v: VertexKey) -> str:
        return str(v)

    def parse_key(self, text: str) -> VertexKey:
        return text

    @property
    def is_finite(self) -> bool:
        return False

    def vertices(self) -> List[VertexKey]:
        raise NotImplementedError(f"{self.name} is not finite")

    @property
    def boundary(self) -> frozenset:
        return frozenset()

    # generic helpers

    def forward(self, gen: int, v: VertexKey) -> Step:
        return self.w_of(v) if gen == W_GEN else self.v_of(gen, v)

    def backward(self, gen: int, v: VertexKey) -> Step:
        return self.w_back(v) if gen == W_GEN else self.v_back(gen, v)

    def generators(self) -> Tuple[int, ...]:
        return tuple(range(self.n + 1))

    def neighbours(self, v: VertexKey) -> List[VertexKey]:
        """Targets of every forward and backward arrow, in generator order"""
        found = []
        for direction in (self.forward, self.backward):
            for gen in self.generators():
                step = direction(gen, v)
                if isinstance(step, Arrow):
                    found.append(step.target)
        return found

    def sort_key(self, v: VertexKey):
        return self.format_key(v)

    def hint_by_id(self, hint_id: str):
        for hint in self.hints:
            if hint.hint_id == hint_id:
                return hint
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} n={self.n}>"


class FiniteRep(AtomicRep):
    """A finite patch read from a representation file.

    Missing forward arrows are unexplored.  A missing backward arrow is ZERO
    unless the vertex is declared boundary.
    """

    def __init__(
        self,
        n: int,
        vertices: Iterable[str],
        w_arrows: Dict[str, Arrow],
        v_arrows: Dict[Tuple[int, str], Arrow],
        boundary: Iterable[str] = (),
        hints: Sequence = (),
        name: str = "file",
    ):
        self._vertices = list(dict.fromkeys(vertices))
        super().__init__(n, name, hints, seeds=tuple(self._vertices))
        self._vertex_set = frozenset(self._vertices)
        self._w = dict(w_arrows)
        self._v = dict(v_arrows)
        self._boundary = frozenset(boundary)
        self._w_back = {arrow.target: Arrow(src, arrow.phase) for src, arrow in self._w.items()}
        self._v_back = {
            (k, arrow.target): Arrow(src, arrow.phase) for (k, src), arrow in self._v.items()
        }

    def contains(self, v) -> bool:
        return v in self._vertex_set

    @property
    def is_finite(self) -> bool:
        return True

    def vertices(self) -> List[str]:
        return list(self._vertices)

    @property
    def boundary(self) -> frozenset:
        return self._boundary

    def _missing_back(self, v) -> Gap:
        return Gap.UNEXPLORED if v in self._boundary or v not in self._vertex_set else Gap.ZERO

    def w_of(self, v) -> Step:
        return self._w.get(v, Gap.UNEXPLORED)

    def v_of(self, k: int, v) -> Step:
        return self._v.get((k, v), Gap.UNEXPLORED)

    def w_back(self, v) -> Step:
        return self._w_back.get(v) or self._missing_back(v)

    def v_back(self, k: int, v) -> Step:
        return self._v_back.get((k, v)) or self._missing_back(v)


class WrappedRep(AtomicRep):
    """Delegates everything to a base representation"""

    def __init__(self, base: AtomicRep, name: str):
        super().__init__(base.n, name, base.hints, base.seeds)
        self.base = base

    def contains(self, v) -> bool:
        return self.base.contains(v)

    def w_of(self, v) -> Step:
        return self.base.w_of(v)

    def v_of(self, k: int, v) -> Step:
        return self.base.v_of(k, v)

    def w_back(self, v) -> Step:
        return self.base.w_back(v)

    def v_back(self, k: int, v) -> Step:
        return self.base.v_back(k, v)

    def format_key(self, v) -> str:
        return self.base.format_key(v)

    def parse_key(self, text: str):
        return self.base.parse_key(text)

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    def vertices(self):
        return self.base.vertices()

    @property
    def boundary(self) -> frozenset:
        return self.base.boundary


class OverlayRep(WrappedRep):
    """Overrides individual forward arrows; backward maps stay the base's."""

    def __init__(
        self,
        base: AtomicRep,
        w_overrides: Optional[Dict] = None,
        v_overrides: Optional[Dict] = None,
    ):
        super().__init__(base, f"{base.name}+overlay")
        self.w_overrides = dict(w_overrides or {})
        self.v_overrides = dict(v_overrides or {})

    def w_of(self, v) -> Step:
        if v in self.w_overrides:
            return self.w_overrides[v]
        return self.base.w_of(v)

    def v_of(self, k: int, v) -> Step:
        if (k, v) in self.v_overrides:
            return self.v_overrides[(k, v)]
        return self.base.v_of(k, v)


def _retag(step: Step, phase: Phase) -> Step:
    if isinstance(step, Arrow):
        return Arrow(step.target, phase)
    return step


def _twist(step: Step, phase: Phase) -> Step:
    if isinstance(step, Arrow):
        return Arrow(step.target, step.phase * phase)
    return step


class PhaseFreeRep(WrappedRep):
    """Same supports, every phase replaced by 1"""

    def __init__(self, base: AtomicRep):
        super().__init__(base, f"{base.name}+phase-free")

    def w_of(self, v) -> Step:
        return _retag(self.base.w_of(v), ONE)

    def v_of(self, k: int, v) -> Step:
        return _retag(self.base.v_of(k, v), ONE)

    def w_back(self, v) -> Step:
        return _retag(self.base.w_back(v), ONE)

    def v_back(self, k: int, v) -> Step:
        return _retag(self.base.v_back(k, v), ONE)


class PhaseTwistedRep(WrappedRep):
    """Multiplies W by `w_phase` and V_k by w_phase^(k-1) * `v_phase`.

    The relations survive exactly when w_phase^(n-1) = 1.
    """

    def __init__(self, base: AtomicRep, w_phase: Phase, v_phase: Phase):
        super().__init__(base, f"{base.name}+twist")
        self.w_phase = w_phase
        self.v_phases = {}
        current = v_phase
        for k in range(1, base.n + 1):
            self.v_phases[k] = current
            current = current * w_phase

    def w_of(self, v) -> Step:
        return _twist(self.base.w_of(v), self.w_phase)

    def v_of(self, k: int, v) -> Step:
        return _twist(self.base.v_of(k, v), self.v_phases[k])

    def w_back(self, v) -> Step:
        return _twist(self.base.w_back(v), self.w_phase)

    def v_back(self, k: int, v) -> Step:
        return _twist(self.base.v_back(k, v), self.v_phases[k])
