#!/usr/bin/env python3
"""
Offline report по центру: блоки малых eve и варианты.

Печатает таблицу сводок и завершается с кодом 1, если хотя бы одна проверка не прошла.
"""

import logging
import sys
from pathlib import Path
from typing import List, Tuple

# Добавляем корень проекта в sys.path для импортов
script_dir = Path(__file__).parent
project_root = script_dir.parent
sys.path.insert(0, str(project_root))

from src.tilting_center import config  # noqa: E402
from src.tilting_center.app.center_service import CenterService  # noqa: E402
from src.tilting_center.app.variant_service import VariantService  # noqa: E402
from src.tilting_center.domain.algebra import ZAlgebra  # noqa: E402
from src.tilting_center.domain.variants import (  # noqa: E402
    G1T,
    G2T,
    QUANTUM,
    QUANTUM_GENERIC,
    VariantSpec,
)

logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL, logging.INFO),
    format="%(asctime)s [%(levelname)s] %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger(__name__)

# (p, eve, N, M)
BLOCK_CASES = [(2, 1, 40, 8), (3, 1, 60, 10), (3, 2, 60, 10), (5, 1, 80, 10)]

# (вариант, N, M)
VARIANT_CASES = [
    (VariantSpec(QUANTUM, 5), 21, 0),
    (VariantSpec(QUANTUM_GENERIC), 4, 0),
    (VariantSpec(G1T, 3), 10, 0),
    (VariantSpec(G2T, 3), 1, 0),
]


def run_report() -> List[Tuple[str, bool]]:
    """Прогоняет все случаи и возвращает пары (сводка, успех)."""
    results = []
    for p, eve, bound, margin in BLOCK_CASES:
        outcome = CenterService(ZAlgebra(p)).verify(eve, bound, margin, solver=True)
        results.append((outcome.summary, outcome.ok))
    service = VariantService()
    for spec, bound, margin in VARIANT_CASES:
        outcome = service.verify(spec, bound, margin)
        results.append((outcome.summary, outcome.ok))
    return results


def main() -> int:
    results = run_report()
    print("\n" + "=" * 100)
    print("CENTER REPORT")
    print("=" * 100)
    for summary, _ in results:
        print(summary)
    print("=" * 100)
    failed = sum(1 for _, ok in results if not ok)
    print(f"Всего: {len(results)}, не прошло: {failed}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
