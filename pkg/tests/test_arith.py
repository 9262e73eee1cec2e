"""
Тесты арифметики F_p и скалярных функций f, g.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.tilting_center.domain.admissible import AdmissibleSet, parse_set
from src.tilting_center.domain.arith import (
    Fp,
    Prime,
    f_of,
    g_of,
    is_prime,
    scale_f,
    scale_g,
    scale_h,
)

PRIMES = [2, 3, 5, 7, 11]


class TestPrime:
    """Тесты типа Prime."""

    def test_accepts_primes(self):
        """Проверяет, что простые числа принимаются."""
        for p in PRIMES:
            assert int(Prime(p)) == p

    def test_rejects_composite(self):
        """Проверяет, что составные и малые числа отвергаются."""
        for n in (0, 1, 4, 9, 15, 10007 * 3):
            with pytest.raises(ValueError):
                Prime(n)

    def test_is_prime_small_range(self):
        """Проверяет is_prime на начальном отрезке."""
        assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


class TestFieldAxioms:
    """Аксиомы поля перебором для p <= 11."""

    @pytest.mark.parametrize("p", PRIMES)
    def test_inverse_exhaustive(self, p):
        """Проверяет, что каждый ненулевой элемент обратим."""
        for a in range(1, p):
            x = Fp(a, p)
            assert x * x.inverse() == Fp(1, p)

    @pytest.mark.parametrize("p", PRIMES)
    def test_distributivity_exhaustive(self, p):
        """Проверяет дистрибутивность на всех тройках."""
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    x, y, z = Fp(a, p), Fp(b, p), Fp(c, p)
                    assert x * (y + z) == x * y + x * z

    def test_value_is_reduced(self):
        """Проверяет, что значение хранится приведенным."""
        assert Fp(-1, 7).value == 6
        assert Fp(15, 7) == Fp(1, 7)

    def test_zero_has_no_inverse(self):
        """Проверяет, что ноль не обратим."""
        with pytest.raises(ZeroDivisionError):
            Fp(0, 5).inverse()

    def test_mixed_fields_rejected(self):
        """Проверяет, что элементы разных полей не складываются."""
        with pytest.raises(ValueError):
            Fp(1, 3) + Fp(1, 5)

    @given(st.integers(), st.integers(), st.sampled_from(PRIMES))
    def test_addition_commutes(self, a, b, p):
        """Проверяет коммутативность сложения на случайных парах."""
        assert Fp(a, p) + Fp(b, p) == Fp(b, p) + Fp(a, p)

    @given(st.integers(min_value=1, max_value=10**6), st.sampled_from([3, 5, 7, 11]))
    def test_division_roundtrip(self, a, p):
        """Проверяет, что (x / y) * y = x для ненулевого y."""
        y = Fp(a, p)
        if not y:
            return
        x = Fp(a * 31 + 7, p)
        assert (x / y) * y == x


class TestScalarFunctions:
    """Значения f и g."""

    def test_worked_values_p7(self):
        """Проверяет f(3)=4, g(3)=1, g(2)=2, g(0)=5 при p=7."""
        assert f_of(3, 7) == Fp(4, 7)
        assert g_of(3, 7) == Fp(1, 7)
        assert g_of(2, 7) == Fp(2, 7)
        assert g_of(0, 7) == Fp(5, 7)

    def test_f_small_prime(self):
        """Проверяет f(2)=1 при p=5 и f(p-1)=0."""
        assert f_of(2, 5) == Fp(1, 5)
        assert f_of(6, 7) == Fp(0, 7)

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_top_digit_vanishes(self, p):
        """Проверяет f(p-1) = g(p-1) = 0."""
        assert not f_of(p - 1, p)
        assert not g_of(p - 1, p)

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_g_inverse_pairs(self, p):
        """Проверяет g(a) * g(p-a-1) = 1 при 1 <= a <= p-2."""
        for a in range(1, p - 1):
            assert g_of(a, p) * g_of(p - a - 1, p) == Fp(1, p)

    def test_p2_is_degenerate(self):
        """Проверяет, что при p=2 функции f и g тождественно нулевые."""
        assert not f_of(0, 2) and not f_of(1, 2)
        assert not g_of(0, 2) and not g_of(1, 2)

    def test_digit_out_of_range(self):
        """Проверяет, что цифра вне [0, p) отвергается."""
        with pytest.raises(ValueError):
            f_of(7, 7)
        with pytest.raises(ValueError):
            g_of(-1, 7)


class TestScalingOperators:
    """Операторы F_S, G_S, H_S."""

    def test_worked_example_p7(self):
        """Проверяет F=4, G=1, H=2 для S={5,4,3|0} и v=[3,1,6,5,0,5,6]_7."""
        v = 385916
        S = parse_set("{5,4,3|0}")
        assert scale_f(S, v, 7) == Fp(4, 7)
        assert scale_g(S, v, 7) == Fp(1, 7)
        assert scale_h(S, v, 7) == Fp(2, 7)

    def test_g_at_p5(self):
        """Проверяет G_{0} e_8 = g(1) = 3 при p=5."""
        assert scale_g(AdmissibleSet.of([0]), 9, 5) == Fp(3, 5)

    def test_h_wraps_zero_digit(self):
        """Проверяет, что H при нулевой цифре дает g(p-1) = 0."""
        # 10 = [2,0]_5, цифра a_1 = 2; S={1} читает a_2 = 0
        assert not scale_h(AdmissibleSet.of([1]), 10, 5)

    def test_top_digit_kills_f_and_g(self):
        """Проверяет, что при a_{max(S)+1} = p-1 скаляры F и G нулевые."""
        # 24 = [4,4]_5
        S = AdmissibleSet.of([0])
        assert not scale_f(S, 24, 5)
        assert not scale_g(S, 24, 5)
