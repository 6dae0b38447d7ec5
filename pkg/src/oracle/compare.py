"""Cross-check of the combinatorial classifier against window projections."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from ..config import settings
from ..representations.atomic import AtomicRep, VertexKey
from ..representations.verify import Report, verify_relations
from ..wold.certificates import ComponentId, Status
from ..wold.classifier import Classification, ClassificationSession
from ..wold.popovici import PopoviciDecomposition
from .projections import ProjectionEngine
from .window import build_window, logger

COMPARED = (ComponentId.UU, ComponentId.US, ComponentId.SU, ComponentId.WS)


@dataclass
class AgreementReport:
    compared: int = 0
    disagreements: List[Dict] = field(default_factory=list)
    skipped: Dict[str, int] = field(default_factory=lambda: {"horizon": 0, "inexact": 0, "unknown": 0})
    relations: Optional[Report] = None
    refused: bool = False

    @property
    def passed(self) -> bool:
        return not self.refused and not self.disagreements

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "refused": self.refused,
            "compared": self.compared,
            "skipped": dict(sorted(self.skipped.items())),
            "disagreements": self.disagreements,
            "relations": self.relations.to_dict() if self.relations else None,
        }


def _check(report: AgreementReport, source: str, key: str, cls: Classification, values, exact, i: int, depth: int, tol: float):
    for c in COMPARED:
        verdict = cls.verdicts.get(c)
        if verdict is None or not verdict.conclusive:
            report.skipped["unknown"] += 1
            continue
        if verdict.horizon is None or verdict.horizon > depth:
            report.skipped["horizon"] += 1
            continue
        if not exact[c][i]:
            report.skipped["inexact"] += 1
            continue
        value = float(values[c][i])
        report.compared += 1
        expected_in = verdict.status == Status.IN
        if (expected_in and value < 1 - tol) or (not expected_in and value > tol):
            report.disagreements.append({
                "source": source,
                "vertex": key,
                "component": c.value,
                "status": verdict.status.value,
                "horizon": verdict.horizon,
                "norm": value,
            })


def compare_with_classifier(
    rep: AtomicRep,
    seeds: Iterable[VertexKey],
    radius: int,
    depth: int,
    tol: Optional[float] = None,
    budget: Optional[int] = None,
) -> AgreementReport:
    """Compare conclusive verdicts with exact interior projection norms at `depth`"""
    tol = settings.projection_tol if tol is None else tol
    budget = settings.default_budget if budget is None else budget
    seeds = list(seeds)

    relations = verify_relations(rep, seeds, radius)
    if not relations.passed:
        logger.error(f"Relations fail on {rep.name}; refusing to compare")
        return AgreementReport(relations=relations, refused=True)

    win = build_window(rep, seeds, radius, margin=depth)
    engine = ProjectionEngine(win)
    tracked = {c: engine.component(c, depth) for c in COMPARED}
    values = {c: t.values for c, t in tracked.items()}
    exact = {c: t.exact for c, t in tracked.items()}

    session = ClassificationSession(rep, budget)
    popovici = PopoviciDecomposition(rep, budget) if rep.n == 1 else None

    report = AgreementReport(relations=relations)
    for i, inside in enumerate(win.interior_mask):
        if not inside:
            continue
        v = win.vertices[i]
        key = win.key(i)
        cls = session.classify(v)
        _check(report, "classifier", key, cls, values, exact, i, depth, tol)
        if popovici is not None:
            pair = popovici.classify(v)
            _check(report, "popovici", key, pair, values, exact, i, depth, tol)
            if cls.resolved is not None and pair.resolved is not None and cls.resolved != pair.resolved:
                report.disagreements.append({
                    "source": "popovici",
                    "vertex": key,
                    "component": "resolved",
                    "classifier": cls.resolved.value,
                    "popovici": pair.resolved.value,
                })

    logger.info(
        f"Compared {report.compared} values on {rep.name}: {len(report.disagreements)} disagreements, skipped {report.skipped}"
    )
    return report
