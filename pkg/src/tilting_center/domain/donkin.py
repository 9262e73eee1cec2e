"""
Тензорная факторизация Донкина T(v-1) по цифрам v.
"""

from dataclasses import dataclass
from typing import List, Tuple

from .padic import digits, leading_index


@dataclass(frozen=True, order=True)
class DonkinFactor:
    """Множитель T(index-1)^(twist); twist - степень скручивания Фробениуса."""

    twist: int
    index: int

    @property
    def weight(self) -> int:
        return self.index - 1

    def __str__(self) -> str:
        return f"T({self.weight})^({self.twist})"


@dataclass(frozen=True)
class DonkinFactorization:
    """Множители в порядке убывания скручивания."""

    vertex: int
    p: int
    factors: Tuple[DonkinFactor, ...]

    def pruned(self) -> "DonkinFactorization":
        """Без тривиальных T(0) и множителей Стейнберга T(p-1) от нулевых цифр."""
        kept = tuple(f for f in self.factors if f.weight not in (0, self.p - 1))
        return DonkinFactorization(self.vertex, self.p, kept)

    def weights(self) -> List[Tuple[int, int]]:
        """Пары (вес, скручивание)."""
        return [(f.weight, f.twist) for f in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "T(0)"
        return " (x) ".join(str(f) for f in self.factors)


def _check_vertex(v: int) -> None:
    if v < 1:
        raise ValueError(f"vertex must be >= 1, got {v}")


def donkin_factorize(v: int, p: int) -> DonkinFactorization:
    """
    T(v-1) = T(a_j-1)^(j) (x) T(a_i+p-1)^(i) по всем i < j.

    Args:
        v: Вершина v >= 1
        p: Простое

    Returns:
        DonkinFactorization: полный список множителей, включая T(0) и T(p-1)

    Raises:
        ValueError: если v < 1
    """
    _check_vertex(v)
    d = digits(v, p)
    j = len(d) - 1
    factors = [DonkinFactor(twist=j, index=d[j])]
    for i in range(j - 1, -1, -1):
        factors.append(DonkinFactor(twist=i, index=d[i] + p))
    return DonkinFactorization(v, p, tuple(factors))


def donkin_split(v: int, p: int) -> Tuple[DonkinFactor, int]:
    """
    Отделяет старший множитель: T(v-1) = T(a_j-1)^(j) (x) T(v'-1).

    Returns:
        Tuple[DonkinFactor, int]: старший множитель и v' со старшей цифрой 1
    """
    _check_vertex(v)
    j = leading_index(v, p)
    a = digits(v, p)[j]
    return DonkinFactor(twist=j, index=a), v - (a - 1) * p**j


def donkin_class_split(v: int, w: int, p: int) -> DonkinFactorization:
    """
    Факторизация T(w-1) = T(w'-1)^(j) (x) T(v'-1) для w с теми же младшими цифрами.

    w' - число из цифр w начиная с j-й, v' = v со старшей цифрой 1.
    Множитель T(0)^(j) от v' поглощается.

    Raises:
        ValueError: если младшие j цифр v и w различаются
    """
    _check_vertex(v)
    _check_vertex(w)
    j = leading_index(v, p)
    if w % p**j != v % p**j:
        raise ValueError(f"{w} and {v} differ below digit {j} (p={p})")
    upper = donkin_factorize(w // p**j, p)
    _, reduced = donkin_split(v, p)
    shifted = tuple(DonkinFactor(f.twist + j, f.index) for f in upper.factors)
    lower = donkin_factorize(reduced, p).factors[1:]
    return DonkinFactorization(w, p, shifted + lower)
