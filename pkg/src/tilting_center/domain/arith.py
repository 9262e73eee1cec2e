"""
Арифметика простого поля F_p и скалярные функции f, g.

Скаляры F_S, G_S, H_S читают цифру a_{max(S)+1} вершины и применяют f или g.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Union

from .padic import digit_at

if TYPE_CHECKING:
    from .admissible import AdmissibleSet


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Проверяет простоту перебором делителей до sqrt(n)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    """
    Проверяет, что p простое.

    Returns:
        int: то же p

    Raises:
        ValueError: если p не простое
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not a prime")
    return p


@dataclass(frozen=True)
class Prime:
    """Простое число p >= 2, проверяется при создании."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)


@dataclass(frozen=True)
class Fp:
    """Элемент F_p. Значение всегда приведено по модулю p."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: Union["Fp", int]) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.value
        return other

    def __add__(self, other: Union["Fp", int]) -> "Fp":
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other: Union["Fp", int]) -> "Fp":
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other: int) -> "Fp":
        return Fp(other - self.value, self.p)

    def __mul__(self, other: Union["Fp", int]) -> "Fp":
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "Fp":
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        """Обратный элемент; для нуля поднимает ZeroDivisionError."""
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other: Union["Fp", int]) -> "Fp":
        return self * Fp(self._coerce(other), self.p).inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def inv_mod(a: int, p: int) -> int:
    """Обратный по модулю простого p (малая теорема Ферма)."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@lru_cache(maxsize=None)
def f_value(a: int, p: int) -> int:
    """f(a) = (-1)^a * 2 / a при 1 <= a <= p-2, иначе 0. Результат в [0, p)."""
    if not 1 <= a <= p - 2:
        return 0
    sign = -1 if a % 2 else 1
    return (sign * 2 * inv_mod(a, p)) % p


@lru_cache(maxsize=None)
def g_value(a: int, p: int) -> int:
    """g(a) = -(a+1)/a при 1 <= a <= p-1, g(0) = -2. Результат в [0, p)."""
    if a == 0:
        return (-2) % p
    return (-(a + 1) * inv_mod(a, p)) % p


def f_of(a: int, p: int) -> Fp:
    """
    Функция f из определения скалярных операторов.

    Args:
        a: Цифра 0 <= a < p
        p: Простое

    Returns:
        Fp: f(a) mod p
    """
    if not 0 <= a < p:
        raise ValueError(f"digit {a} out of range [0, {p})")
    return Fp(f_value(a, p), p)


def g_of(a: int, p: int) -> Fp:
    """
    Функция g из определения скалярных операторов.

    Args:
        a: Цифра 0 <= a < p
        p: Простое

    Returns:
        Fp: g(a) mod p
    """
    if not 0 <= a < p:
        raise ValueError(f"digit {a} out of range [0, {p})")
    return Fp(g_value(a, p), p)


def scale_digit(top: int, v: int, p: int) -> int:
    """Цифра a_{top+1} вершины v, над которой действуют скаляры."""
    return digit_at(v, top + 1, p)


def scale_f(S: "AdmissibleSet", v: int, p: int) -> Fp:
    """F_S e_{v-1} = f(a_{max(S)+1}) e_{v-1}."""
    return f_of(scale_digit(S.top, v, p), p)


def scale_g(S: "AdmissibleSet", v: int, p: int) -> Fp:
    """G_S e_{v-1} = g(a_{max(S)+1}) e_{v-1}."""
    return g_of(scale_digit(S.top, v, p), p)


def scale_h(S: "AdmissibleSet", v: int, p: int) -> Fp:
    """H_S e_{v-1} = g(a_{max(S)+1} - 1) e_{v-1}; аргумент приводится по модулю p."""
    return g_of((scale_digit(S.top, v, p) - 1) % p, p)
