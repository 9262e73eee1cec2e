"""
Сервис проверки центра блока: кандидаты, произведения, решатель, Казимир.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..adapters.json_export.exporter import report_to_json
from ..domain.algebra import ZAlgebra
from ..domain.center import (
    casimir_check,
    central_loop,
    central_products,
    check_centrality,
    commutant_solve,
    example_obstruction,
    unit_candidate,
)
from ..domain.models import Truncation
from ..domain.padic import is_eve
from ..domain.quiver import block

logger = logging.getLogger(__name__)

# вершина и индекс петли из разобранного примера препятствия (p=3)
OBSTRUCTION_PRIME = 3
OBSTRUCTION_VERTEX = 13


@dataclass
class VerificationOutcome:
    """Итог проверки: JSON-документ, строка сводки и признак успеха."""

    document: Dict[str, Any] = field(default_factory=dict)
    summary: str = ""
    ok: bool = True


class CenterService:
    """Сервис проверки центральности 1 и L_v на усечении блока."""

    def __init__(self, engine: ZAlgebra):
        """
        Args:
            engine: Движок алгебры Z для фиксированного p
        """
        self.engine = engine
        self.p = engine.p

    def verify(self, eve: int, bound: int, margin: int, solver: bool = False) -> VerificationOutcome:
        """
        Проверяет центральные элементы блока eve на [1, bound] с отступом margin.

        Args:
            eve: eve блока
            bound: Граница усечения N
            margin: Отступ M; проверяются вершины до N - M
            solver: Дополнительно решить систему коммутанта

        Returns:
            VerificationOutcome: документ и сводка

        Raises:
            ValueError: если eve не является eve или margin вне [0, N)
        """
        p = self.p
        if not is_eve(eve, p):
            raise ValueError(f"{eve} is not an eve for p={p}")
        if not 0 <= margin < bound:
            raise ValueError(f"margin must be in [0, {bound}), got {margin}")
        t = Truncation(p, bound, eve=eve)
        interior = [v for v in block(eve, p, bound - margin).members if v != eve]

        candidates = [unit_candidate(self.engine, t)]
        candidates += [central_loop(self.engine, v, t) for v in interior]
        reports = [check_centrality(self.engine, c, t, margin=margin) for c in candidates]
        failed = [r for r in reports if not r.verified]

        nonzero: List[List[int]] = []
        loops = candidates[1:]
        for first in loops:
            for second in loops:
                products = central_products(self.engine, first, second)
                if any(not m.is_zero for m in products.values()):
                    nonzero.append([first.key_vertex, second.key_vertex])

        casimir = casimir_check(eve, p, bound)
        document: Dict[str, Any] = {
            "p": p,
            "eve": eve,
            "bound": bound,
            "margin": margin,
            "candidates": [report_to_json(r) for r in reports],
            "nonzero_products": nonzero,
            "casimir": report_to_json(casimir),
        }
        ok = not failed and not nonzero and casimir.verified

        if p == OBSTRUCTION_PRIME and OBSTRUCTION_VERTEX in interior:
            obstruction = example_obstruction(self.engine)
            document["obstruction"] = report_to_json(obstruction)
            # одиночная петля обязана не коммутировать
            ok = ok and not obstruction.verified

        solver_text = "solver skipped"
        if solver:
            report = commutant_solve(self.engine, t, margin)
            document["solver"] = report_to_json(report)
            ok = ok and report.matches_expected
            solver_text = f"solver rank {report.interior_rank}/{report.expected_interior_rank}"

        document["ok"] = ok
        summary = (
            f"center p={p} e={eve} N={bound} M={margin}: "
            f"{len(reports) - len(failed)}/{len(reports)} central, "
            f"{len(nonzero)} nonzero products, {solver_text}: {'OK' if ok else 'FAILED'}"
        )
        logger.info(summary)
        return VerificationOutcome(document=document, summary=summary, ok=ok)
