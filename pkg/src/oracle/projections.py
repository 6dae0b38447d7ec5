"""Depth-truncated component projections evaluated on a window.

Every operator in play is a monomial partial isometry, so each projection built
from ranges, kernels and intersections is diagonal in the vertex basis.  The
diagonal is computed by pushing indicator vectors through the modulus-squared
matrices |A|^2, together with a mask saying which entries are exact: an entry
is exact when no walk behind it crossed an arrow the window cuts off.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..semigroup.errors import BadParam, DepthExceedsMargin
from ..wold.certificates import ComponentId
from .window import Window, logger


@dataclass
class Tracked:
    values: np.ndarray
    exact: np.ndarray

    @classmethod
    def ones(cls, dim: int) -> "Tracked":
        return cls(np.ones(dim), np.ones(dim, dtype=bool))

    @classmethod
    def zeros(cls, dim: int) -> "Tracked":
        return cls(np.zeros(dim), np.ones(dim, dtype=bool))

    def complement(self) -> "Tracked":
        return Tracked(1.0 - self.values, self.exact.copy())

    def __add__(self, other: "Tracked") -> "Tracked":
        return Tracked(self.values + other.values, self.exact & other.exact)

    def __mul__(self, other: "Tracked") -> "Tracked":
        exact_zero = (self.exact & (self.values == 0)) | (other.exact & (other.values == 0))
        return Tracked(self.values * other.values, (self.exact & other.exact) | exact_zero)


class _Ops:
    """Image and preimage maps of one generator on indicator vectors"""

    def __init__(self, win: Window, name: str):
        self.square = np.abs(win.matrices[name]) ** 2
        self.exits_fwd = win.exits_fwd[name]
        self.exits_back = win.exits_back[name]

    def image(self, p: Tracked) -> Tracked:
        """Indicator of A(S): the diagonal of A P_S A*"""
        values = self.square @ p.values
        inexact = self.square @ (~p.exact).astype(float)
        return Tracked(values, (inexact == 0) & ~self.exits_back)

    def preimage(self, p: Tracked) -> Tracked:
        """Indicator of A^-1(S): the diagonal of A* P_S A"""
        values = self.square.T @ p.values
        inexact = self.square.T @ (~p.exact).astype(float)
        return Tracked(values, (inexact == 0) & ~self.exits_fwd)

    def range(self, dim: int) -> Tracked:
        return self.image(Tracked.ones(dim))


def _sum(items: Sequence[Tracked]) -> Tracked:
    total = items[0]
    for item in items[1:]:
        total = total + item
    return total


def _product(items: Sequence[Tracked]) -> Tracked:
    total = items[0]
    for item in items[1:]:
        total = total * item
    return total


class ProjectionEngine:
    """Truncated projections of one window, shared across components and depths"""

    def __init__(self, win: Window):
        self.win = win
        self.n = win.rep.n
        self.dim = win.dim
        self.w = _Ops(win, "W")
        self.v = [_Ops(win, f"V{k}") for k in range(1, self.n + 1)]

    def _v_image(self, p: Tracked) -> Tracked:
        return _sum([op.image(p) for op in self.v])

    def uu(self, depth: int) -> Tracked:
        """Range of the depth-fold products of the row {W V_1, ..., W V_n}"""
        p = Tracked.ones(self.dim)
        for _ in range(depth):
            p = _sum([self.w.image(op.image(p)) for op in self.v])
        return p

    def _shift_over_core(self, depth: int, shift_ops: List[_Ops], unitary: _Ops, avoided: List[Tracked]) -> Tracked:
        """Sum over |mu| <= depth of S_mu [ intersection over m <= depth of U^m K ]

        K is the set of vertices whose forward U-orbit (up to `depth` steps)
        stays out of every range in `avoided`.
        """
        factors = []
        for ran in avoided:
            pulled = ran
            for _ in range(depth + 1):
                factors.append(pulled.complement())
                pulled = unitary.preimage(pulled)
        kernel = _product(factors)

        pieces, pushed = [], kernel
        for _ in range(depth + 1):
            pieces.append(pushed)
            pushed = unitary.image(pushed)
        core = _product(pieces)

        layers, layer = [], core
        for _ in range(depth + 1):
            layers.append(layer)
            layer = _sum([op.image(layer) for op in shift_ops])
        return _sum(layers)

    def us(self, depth: int) -> Tracked:
        """V-shift over the part of the V-wandering space where W is unitary"""
        avoided = [op.range(self.dim) for op in self.v]
        return self._shift_over_core(depth, self.v, self.w, avoided)

    def su(self, depth: int) -> Tracked:
        """W-shift over the part of ker W* where V_1 is unitary"""
        return self._shift_over_core(depth, [self.w], self.v[0], [self.w.range(self.dim)])

    def ss(self, depth: int) -> Tracked:
        """Sum over |mu|, m <= depth of V_mu W^m e_x with x in every ker V_k* and in ker W*"""
        wandering = _product([op.range(self.dim).complement() for op in self.v] + [self.w.range(self.dim).complement()])
        w_layers, layer = [], wandering
        for _ in range(depth + 1):
            w_layers.append(layer)
            layer = self.w.image(layer)
        base = _sum(w_layers)
        v_layers, layer = [], base
        for _ in range(depth + 1):
            v_layers.append(layer)
            layer = self._v_image(layer)
        return _sum(v_layers)

    def ws(self, depth: int) -> Tracked:
        parts = [self.uu(depth), self.us(depth), self.su(depth)]
        total = _sum(parts)
        return Tracked(1.0 - total.values, total.exact)

    def component(self, c: ComponentId, depth: int) -> Tracked:
        if depth > self.win.margin:
            raise DepthExceedsMargin(f"Depth {depth} exceeds the window's interior margin {self.win.margin}")
        if depth < 0:
            raise BadParam(f"Depth must be non-negative, got {depth}")
        return getattr(self, c.value)(depth)


def project_component(win: Window, c: ComponentId, depth: int) -> Dict[str, float]:
    """||P_c e_v||^2 at depth `depth` for every interior vertex v"""
    values = ProjectionEngine(win).component(c, depth).values
    mask = win.interior_mask
    result = {win.key(i): float(values[i]) for i in np.flatnonzero(mask)}
    logger.debug(f"Projected {c.value} at depth {depth} on {len(result)} interior vertices")
    return result


@dataclass
class DecompositionNorms:
    """Per-vertex norms of the unitary-part projection and the wandering indices"""
    unitary: np.ndarray
    wandering: List[int]


def _interior_indices(dim: int, interior: Optional[np.ndarray]) -> np.ndarray:
    if interior is None:
        return np.arange(dim)
    return np.flatnonzero(interior)


def wold_single(S: np.ndarray, depth: int, interior: Optional[np.ndarray] = None) -> DecompositionNorms:
    """Wold split of one isometry: ||P_{ran S^depth} e_v||^2 and the interior of ker S*"""
    power = np.linalg.matrix_power(S, depth)
    unitary = np.sum(np.abs(power) ** 2, axis=1)
    rows = np.sum(np.abs(S) ** 2, axis=1)
    wandering = [int(i) for i in _interior_indices(S.shape[0], interior) if rows[i] == 0]
    return DecompositionNorms(unitary, wandering)


def popescu_row(Vs: Sequence[np.ndarray], depth: int, interior: Optional[np.ndarray] = None) -> DecompositionNorms:
    """Row version: diagonal of sum over |mu| = depth of V_mu V_mu*, and the interior of every ker V_k*"""
    dim = Vs[0].shape[0]
    X = np.eye(dim, dtype=complex)
    for _ in range(depth):
        X = sum(V @ X @ V.conj().T for V in Vs)
    unitary = np.real(np.diag(X))
    rows = sum(np.sum(np.abs(V) ** 2, axis=1) for V in Vs)
    wandering = [int(i) for i in _interior_indices(dim, interior) if rows[i] == 0]
    return DecompositionNorms(unitary, wandering)
