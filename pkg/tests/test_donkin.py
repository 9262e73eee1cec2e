"""
Тесты факторизации Донкина.
"""

import pytest

from src.tilting_center.domain.donkin import (
    DonkinFactor,
    donkin_class_split,
    donkin_factorize,
    donkin_split,
)

V7 = 385916  # [3,1,6,5,0,5,6]_7
V7_UP_SIX = 1327108  # [1,4,1,6,5,0,5,6]_7


class TestFactorize:
    def test_worked_vertex(self):
        """Проверяет множители T(v-1) для v = [3,1,6,5,0,5,6]_7."""
        result = donkin_factorize(V7, 7)
        assert str(result) == (
            "T(2)^(6) (x) T(7)^(5) (x) T(12)^(4) (x) T(11)^(3) "
            "(x) T(6)^(2) (x) T(11)^(1) (x) T(12)^(0)"
        )

    def test_small_vertex(self):
        assert str(donkin_factorize(17, 3)) == "T(0)^(2) (x) T(4)^(1) (x) T(4)^(0)"

    def test_pruned_drops_trivial_and_steinberg(self):
        """Проверяет, что pruned убирает T(0) и T(p-1)."""
        pruned = donkin_factorize(V7, 7).pruned()
        assert pruned.weights() == [(2, 6), (7, 5), (12, 4), (11, 3), (11, 1), (12, 0)]

    def test_one_is_trivial(self):
        result = donkin_factorize(1, 5)
        assert result.factors == (DonkinFactor(twist=0, index=1),)
        assert result.pruned().factors == ()
        assert str(result.pruned()) == "T(0)"

    def test_nonpositive_vertex_rejected(self):
        with pytest.raises(ValueError):
            donkin_factorize(0, 3)


class TestSplit:
    def test_leading_factor(self):
        """Проверяет отделение T(2)^(6) и v' = v - 2*7^6."""
        factor, reduced = donkin_split(V7, 7)
        assert factor == DonkinFactor(twist=6, index=3)
        assert reduced == 150618

    def test_class_split_matches_direct(self):
        """Проверяет, что разложение через v' совпадает с прямым для w из класса."""
        split = donkin_class_split(V7, V7_UP_SIX, 7)
        assert split.factors == donkin_factorize(V7_UP_SIX, 7).factors
        assert [str(f) for f in split.factors[:2]] == ["T(0)^(7)", "T(10)^(6)"]

    def test_class_split_needs_common_lower_digits(self):
        with pytest.raises(ValueError):
            donkin_class_split(V7, V7 + 1, 7)
