"""Finite windows of a representation as dense complex matrices.

Column j of the matrix for generator g holds the image of the j-th window
vertex: one unit-modulus entry when the arrow lands inside the window, an all
zero column when it leaves.  Leaving columns are flagged in `exits_fwd`, and
rows whose incoming arrow starts outside are flagged in `exits_back`.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import numpy as np

from ..config import settings
from ..representations.atomic import Arrow, AtomicRep, Gap, VertexKey, generator_name
from ..representations.verify import explore
from ..semigroup.errors import BadParam
from ..semigroup.logger_config import setup_logger

logger = setup_logger('oracle')


@dataclass(eq=False)
class Window:
    rep: AtomicRep
    vertices: List[VertexKey]
    distance: Dict[VertexKey, int]
    radius: int
    margin: int
    matrices: Dict[str, np.ndarray]
    exits_fwd: Dict[str, np.ndarray]
    exits_back: Dict[str, np.ndarray]
    index: Dict[VertexKey, int] = field(init=False)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def dim(self) -> int:
        return len(self.vertices)

    @property
    def names(self) -> List[str]:
        return [generator_name(gen) for gen in self.rep.generators()]

    def within(self, reach: int) -> np.ndarray:
        """Mask of vertices at distance <= radius - reach from the seeds"""
        limit = self.radius - reach
        return np.array([self.distance[v] <= limit for v in self.vertices], dtype=bool)

    @property
    def interior_mask(self) -> np.ndarray:
        return self.within(self.margin)

    @property
    def interior(self) -> List[VertexKey]:
        mask = self.interior_mask
        return [v for v, inside in zip(self.vertices, mask) if inside]

    def key(self, i: int) -> str:
        return self.rep.format_key(self.vertices[i])


def build_window(
    rep: AtomicRep,
    seeds: Iterable[VertexKey],
    radius: int,
    margin: int = 2,
    cap: Optional[int] = None,
) -> Window:
    """Breadth-first window of `radius` around `seeds`, vertices in sorted key order"""
    if radius < 2:
        raise BadParam(f"Window radius must be at least 2, got {radius}")
    if margin < 0 or margin > radius:
        raise BadParam(f"Interior margin must lie in [0, {radius}], got {margin}")

    distance = explore(rep, seeds, radius, cap)
    vertices = sorted(distance, key=rep.sort_key)
    index = {v: i for i, v in enumerate(vertices)}
    dim = len(vertices)

    matrices, exits_fwd, exits_back = {}, {}, {}
    for gen in rep.generators():
        name = generator_name(gen)
        matrix = np.zeros((dim, dim), dtype=complex)
        leaves = np.zeros(dim, dtype=bool)
        enters = np.zeros(dim, dtype=bool)
        for j, v in enumerate(vertices):
            step = rep.forward(gen, v)
            if isinstance(step, Arrow) and step.target in index:
                matrix[index[step.target], j] = step.phase.to_complex()
            else:
                leaves[j] = True
            back = rep.backward(gen, v)
            if back is Gap.UNEXPLORED or (isinstance(back, Arrow) and back.target not in index):
                enters[j] = True
        matrices[name] = matrix
        exits_fwd[name] = leaves
        exits_back[name] = enters

    logger.info(f"Window of {rep.name}: {dim} vertices within radius {radius}")
    return Window(rep, vertices, distance, radius, margin, matrices, exits_fwd, exits_back)


@dataclass
class NumericReport:
    tol: float
    columns: int
    residuals: Dict[str, float]
    nica_residual: float
    nica_witness: Optional[str] = None
    projections: Dict[str, Dict[str, float]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(value <= self.tol for value in self.residuals.values())

    def to_dict(self) -> Dict:
        return {
            "tol": self.tol,
            "columns": self.columns,
            "passed": self.passed,
            "residuals": dict(sorted(self.residuals.items())),
            "nica_residual": self.nica_residual,
            "nica_witness": self.nica_witness,
            "projections": {v: dict(sorted(c.items())) for v, c in sorted(self.projections.items())},
        }


def _column_max(matrix: np.ndarray, mask: np.ndarray) -> float:
    if not mask.any():
        return 0.0
    return float(np.linalg.norm(matrix[:, mask], axis=0).max())


def _two_step_settled(win: Window, flags: Dict[str, np.ndarray]) -> np.ndarray:
    """Columns whose arrows, and the arrows after them, are all known inside the window"""
    settled = ~np.any([flags[name] for name in win.names], axis=0)
    unsettled = (~settled).astype(float)
    for name in win.names:
        settled &= (np.abs(win.matrices[name]).T @ unsettled) == 0
    return settled


def check_relations_numeric(win: Window, tol: Optional[float] = None) -> NumericReport:
    """Residuals of the defining relations on columns two steps inside the window"""
    tol = settings.residual_tol if tol is None else tol
    if tol <= 0:
        raise BadParam(f"Tolerance must be positive, got {tol}")
    n = win.rep.n
    m = win.matrices
    cols = win.within(2) & _two_step_settled(win, win.exits_fwd)
    eye = np.eye(win.dim)

    residuals: Dict[str, float] = {}
    for k in range(1, n):
        residuals[f"WV_{k}=V_{k + 1}"] = _column_max(m["W"] @ m[f"V{k}"] - m[f"V{k + 1}"], cols)
    residuals["WV_n=V_1W"] = _column_max(m["W"] @ m[f"V{n}"] - m["V1"] @ m["W"], cols)
    for name in win.names:
        residuals[f"{name}*{name}=I"] = _column_max(m[name].conj().T @ m[name] - eye, cols)
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            residuals[f"V{j}*V{k}=0"] = _column_max(m[f"V{j}"].conj().T @ m[f"V{k}"], cols)

    w_star = m["W"].conj().T
    nica = w_star @ m["V1"] - m[f"V{n}"] @ w_star
    nica_cols = cols & _two_step_settled(win, win.exits_back)
    nica_norms = np.where(nica_cols, np.linalg.norm(nica, axis=0), 0.0)
    witness = None
    failing = np.flatnonzero(nica_norms > tol)
    if failing.size:
        witness = win.key(int(failing[0]))

    report = NumericReport(tol, int(cols.sum()), residuals, float(nica_norms.max(initial=0.0)), witness)
    logger.info(f"Numeric relations on {win.rep.name}: {'pass' if report.passed else 'fail'} over {report.columns} columns")
    return report


def export_matrix_text(matrix: np.ndarray) -> str:
    """Row-major text: one line per row, entries as "re,im" separated by spaces"""
    lines = [f"{matrix.shape[0]} {matrix.shape[1]}"]
    for row in matrix:
        lines.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"
