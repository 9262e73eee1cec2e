"""
Сервис проверки вариантов: соотношения, размерности End и центр окна.
"""

import logging
from typing import Any, Dict, List

from ..adapters.json_export.exporter import report_to_json
from ..domain.variants import (
    G2T,
    QUANTUM,
    QUANTUM_GENERIC,
    VariantAlgebra,
    VariantCenterSolver,
    VariantSpec,
    steinberg_reference,
)
from .center_service import VerificationOutcome

logger = logging.getLogger(__name__)


def expected_end_dimension(spec: VariantSpec, i: int) -> int:
    """dim e_i Z e_i: 1 без стрелок и в v_0 квантового случая, 2 на прямой, 2 или 4 в сетке."""
    if spec.kind == QUANTUM_GENERIC:
        return 1
    if spec.kind == QUANTUM and i == 0:
        return 1
    if spec.kind == G2T:
        return 2 if i % spec.base == 0 else 4
    return 2


class VariantService:
    """Сервис проверки центра варианта на окне."""

    def verify(self, spec: VariantSpec, bound: int, margin: int = 0) -> VerificationOutcome:
        """
        Решает систему центра и сверяет предсказанные центральные семейства.

        Args:
            spec: Вариант
            bound: Граница окна
            margin: Отступ внутренней части

        Returns:
            VerificationOutcome: документ и сводка
        """
        algebra = VariantAlgebra(spec)
        solver = VariantCenterSolver(algebra, bound, margin)
        report = solver.solve()

        wrong_dims: List[int] = [
            i for i, dim in report.end_dimensions.items() if dim != expected_end_dimension(spec, i)
        ]

        families: Dict[str, bool] = {
            "unit": solver.interior_contains({i: algebra.element((i,)) for i in solver.indices}),
        }
        single = [i for i in solver.interior() if algebra.vertex_central(i)]
        families["single_vertex"] = all(
            solver.interior_contains({i: algebra.vertex_central(i)}) for i in single
        )
        if spec.kind == G2T:
            for j in range(1, spec.base):
                families[f"column_{j}"] = solver.interior_contains(
                    algebra.column_sum(j, solver.indices)
                )

        reference = steinberg_reference(spec)
        document: Dict[str, Any] = {
            "variant": spec.kind,
            "base": spec.base,
            "report": report_to_json(report),
            "families": families,
            "wrong_end_dimensions": sorted(wrong_dims),
            "steinberg_reference": str(reference) if reference else None,
        }
        ok = report.matches_expected and not wrong_dims and all(families.values())
        document["ok"] = ok
        summary = (
            f"variant {spec} bound={bound} M={margin}: {report.vertices} vertices, "
            f"center {report.nullity}/{report.expected_nullity}, "
            f"interior {report.interior_rank}/{report.expected_interior_rank}: "
            f"{'OK' if ok else 'FAILED'}"
        )
        logger.info(summary)
        return VerificationOutcome(document=document, summary=summary, ok=ok)
