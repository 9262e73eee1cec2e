"""
Тесты базисов Hom и колец эндоморфизмов.
"""

import pytest

from src.tilting_center.domain.admissible import min_down_spans, weyl_factors
from src.tilting_center.domain.algebra import ZAlgebra
from src.tilting_center.domain.models import BasisWord, Truncation

V7 = 385916  # [3,1,6,5,0,5,6]_7


class TestHomBasis:
    """Размерности e_{w-1} Z e_{v-1}."""

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_end_dimension(self, p):
        """Проверяет dim End(e_{v-1}) = 2^(число минимальных отрезков), v <= 200."""
        z = ZAlgebra(p)
        for v in range(1, 201):
            assert z.hom_dim(v, v) == 2 ** len(min_down_spans(v, p)), v

    @pytest.mark.parametrize("p", [3, 5])
    def test_weyl_factor_oracle(self, p):
        """Проверяет dim Hom = число общих факторов Вейля."""
        z = ZAlgebra(p)
        for v in range(1, 50):
            fv = set(weyl_factors(v, p))
            for w in range(1, 50):
                assert z.hom_dim(v, w) == len(fv & set(weyl_factors(w, p))), (v, w)

    def test_hom_is_symmetric(self):
        """Проверяет, что транспонирование переводит базис Hom(v, w) в базис Hom(w, v)."""
        z = ZAlgebra(3)
        for v, w in [(13, 11), (17, 5), (25, 7)]:
            flipped = sorted(
                BasisWord(b.target, b.source, b.ups, b.downs) for b in z.hom_basis(v, w)
            )
            assert flipped == sorted(z.hom_basis(w, v))

    def test_worked_vertex_end(self):
        """Проверяет 32 базисных петли в e_{v-1} для v = [3,1,6,5,0,5,6]_7."""
        assert ZAlgebra(7).hom_dim(V7, V7) == 32


class TestEndRing:
    """Соотношения колец эндоморфизмов."""

    @pytest.mark.parametrize("v", [5, 13, 17, 25, 41, 121])
    def test_dual_numbers_p3(self, v):
        """Проверяет квадраты, коммутирование и произведения петель при p=3."""
        ring = ZAlgebra(3).end_ring(v)
        assert ring.verified
        assert len(ring.loops) == len(min_down_spans(v, 3))

    def test_eve_has_trivial_end(self):
        """Проверяет, что у eve кольцо эндоморфизмов - поле."""
        ring = ZAlgebra(5).end_ring(25)
        assert ring.loops == {}
        assert ring.maximal_loop == ZAlgebra(5).identity(25)

    def test_maximal_loop_nonzero(self):
        ring = ZAlgebra(7).end_ring(V7)
        assert ring.maximal_loop is not None
        assert not ring.maximal_loop.is_zero


class TestTruncation:
    """Идемпотентные усечения."""

    def test_endpoint_above_bound_vanishes(self):
        z = ZAlgebra(3)
        loop = z.end_ring(17).maximal_loop
        assert z.truncate(loop, Truncation(3, 16)).is_zero
        assert z.truncate(loop, Truncation(3, 17)) == loop

    def test_bound_must_be_positive(self):
        with pytest.raises(ValueError):
            Truncation(3, 0)
