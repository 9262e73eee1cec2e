"""
Тесты сервисов проверки центра блока и вариантов.
"""

import pytest

from src.tilting_center.app.center_service import CenterService
from src.tilting_center.app.variant_service import VariantService, expected_end_dimension
from src.tilting_center.domain.algebra import ZAlgebra
from src.tilting_center.domain.variants import (
    G1T,
    G2T,
    QUANTUM,
    QUANTUM_GENERIC,
    VariantSpec,
)


@pytest.fixture(scope="module")
def block_one():
    return CenterService(ZAlgebra(3)).verify(1, 243, 81)


class TestCenterService:
    """Проверка блока e=1 при p=3."""

    def test_verified(self, block_one):
        assert block_one.ok
        assert block_one.document["ok"] is True
        assert block_one.summary.endswith("OK")

    def test_document_contents(self, block_one):
        """Проверяет кандидатов, пустой список ненулевых произведений и Казимира."""
        doc = block_one.document
        assert doc["candidates"][0]["kind"] == "unit"
        assert all(c["verified"] for c in doc["candidates"])
        assert doc["nonzero_products"] == []
        assert doc["casimir"]["verified"] is True

    def test_obstruction_included(self, block_one):
        """Проверяет, что одиночная петля в 13 отмечена как не центральная."""
        assert block_one.document["obstruction"]["verified"] is False

    def test_small_block_without_obstruction(self):
        outcome = CenterService(ZAlgebra(3)).verify(1, 30, 20)
        assert outcome.ok
        assert "obstruction" not in outcome.document
        assert "solver skipped" in outcome.summary

    def test_rejects_non_eve(self):
        with pytest.raises(ValueError):
            CenterService(ZAlgebra(3)).verify(5, 30, 0)

    @pytest.mark.parametrize("margin", [-1, 30])
    def test_rejects_margin(self, margin):
        with pytest.raises(ValueError):
            CenterService(ZAlgebra(3)).verify(1, 30, margin)


class TestVariantService:
    """Проверка окон вариантов."""

    @pytest.mark.parametrize(
        "spec, bound",
        [
            (VariantSpec(QUANTUM, 5), 21),
            (VariantSpec(QUANTUM_GENERIC), 4),
            (VariantSpec(G1T, 3), 10),
            (VariantSpec(G2T, 3), 1),
        ],
    )
    def test_verified(self, spec, bound):
        outcome = VariantService().verify(spec, bound)
        assert outcome.ok, outcome.document
        assert outcome.document["wrong_end_dimensions"] == []
        assert outcome.summary.startswith(f"variant {spec}")

    def test_g2t_families(self):
        """Проверяет семейства столбцов и ссылку на G1T для Стейнберга."""
        outcome = VariantService().verify(VariantSpec(G2T, 3), 1)
        families = outcome.document["families"]
        assert families["column_1"] and families["column_2"]
        assert outcome.document["steinberg_reference"] == str(VariantSpec(G1T, 3))

    def test_expected_end_dimension(self):
        g2t = VariantSpec(G2T, 5)
        assert expected_end_dimension(g2t, 10) == 2
        assert expected_end_dimension(g2t, 11) == 4
        assert expected_end_dimension(VariantSpec(QUANTUM, 5), 0) == 1
        assert expected_end_dimension(VariantSpec(G1T, 3), 0) == 2
