"""
p-адические разложения вершин.

Цифры хранятся little-endian (индекс = степень p), отображаются big-endian
в виде [a_j,...,a_0]_p. Вершина отождествляется со своим целым значением.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple

DigitSet = FrozenSet[int]

_DIGITS_RE = re.compile(r"^\[\s*((?:-?\d+(?:\s*,\s*-?\d+)*)?)\s*\]_(\d+)$")


@dataclass(frozen=True)
class PadicDigits:
    """Строка цифр по основанию p, цифры могут быть отрицательными или >= p."""

    digits: Tuple[int, ...]
    p: int

    @classmethod
    def from_big_endian(cls, digits: Sequence[int], p: int) -> "PadicDigits":
        """Создает разложение из записи [a_j,...,a_0]."""
        return cls(tuple(reversed(list(digits))), p)

    @property
    def big_endian(self) -> List[int]:
        return list(reversed(self.digits))

    @property
    def is_canonical(self) -> bool:
        """Все цифры в [0, p) и старшая цифра ненулевая."""
        if not self.digits:
            return True
        return all(0 <= d < self.p for d in self.digits) and self.digits[-1] != 0

    def __str__(self) -> str:
        return format_digits(self)


@dataclass(frozen=True)
class Eve:
    """Вершина поколения ноль с меткой '<p' или '>=p'."""

    value: int
    p: int

    @property
    def tag(self) -> str:
        return "<p" if self.value < self.p else ">=p"


def _check_vertex(v: int) -> None:
    if v < 1:
        raise ValueError(f"vertex must be >= 1, got {v}")


@lru_cache(maxsize=65536)
def digits(v: int, p: int) -> Tuple[int, ...]:
    """Канонические цифры v >= 0 little-endian (для нуля пустой кортеж)."""
    result = []
    while v > 0:
        v, r = divmod(v, p)
        result.append(r)
    return tuple(result)


def digit_at(v: int, i: int, p: int) -> int:
    """Цифра a_i вершины v; выше старшей цифры нули."""
    ds = digits(v, p)
    return ds[i] if 0 <= i < len(ds) else 0


def leading_index(v: int, p: int) -> int:
    """Индекс j старшей ненулевой цифры."""
    _check_vertex(v)
    return len(digits(v, p)) - 1


def expand(v: int, p: int) -> PadicDigits:
    """
    Каноническое p-адическое разложение вершины.

    Args:
        v: Вершина v >= 1
        p: Основание

    Returns:
        PadicDigits: цифры в [0, p) со значением v

    Raises:
        ValueError: если v <= 0
    """
    _check_vertex(v)
    return PadicDigits(digits(v, p), p)


def value(d: PadicDigits) -> int:
    """Значение sum d[i] * p^i, цифры любого знака."""
    total = 0
    for digit in reversed(d.digits):
        total = total * d.p + digit
    return total


def normalize(d: PadicDigits) -> PadicDigits:
    """
    Приводит разложение к каноническому виду с тем же значением.

    Raises:
        ValueError: если значение отрицательно
    """
    total = value(d)
    if total < 0:
        raise ValueError(f"cannot normalize negative value {total}")
    return PadicDigits(digits(total, d.p), d.p)


def generation(v: int, p: int) -> int:
    """Число ненулевых цифр минус один."""
    _check_vertex(v)
    return sum(1 for a in digits(v, p) if a) - 1


def is_eve(v: int, p: int) -> bool:
    """Вершина с ровно одной ненулевой цифрой."""
    return generation(v, p) == 0


def eves_below(bound: int, p: int) -> List[Eve]:
    """Все eve <= bound по возрастанию."""
    result = []
    power = 1
    while power <= bound:
        for a in range(1, p):
            if a * power <= bound:
                result.append(Eve(a * power, p))
        power *= p
    return sorted(result, key=lambda e: e.value)


def mother(v: int, p: int) -> Optional[int]:
    """Вершина с обнуленной младшей ненулевой цифрой; None для eve."""
    if is_eve(v, p):
        return None
    power = 1
    rest = v
    while rest % p == 0:
        rest //= p
        power *= p
    return v - (rest % p) * power


def family_line(v: int, p: int) -> List[int]:
    """Цепочка v, mother(v), ..., eve."""
    line = [v]
    parent = mother(v, p)
    while parent is not None:
        line.append(parent)
        parent = mother(parent, p)
    return line


def digit_set(v: int, p: int) -> DigitSet:
    """D_v: индексы ненулевых цифр ниже старшей."""
    ds = digits(v, p)
    return frozenset(i for i, a in enumerate(ds[:-1]) if a)


def parse_digits(text: str) -> PadicDigits:
    """
    Разбирает запись вида [1,2,-2]_3.

    Старшие нулевые цифры отбрасываются, так что [0]_p и []_p дают ноль.

    Raises:
        ValueError: при неверном формате
    """
    match = _DIGITS_RE.match(text.strip())
    if not match:
        raise ValueError(f"ill-formed digit string: {text!r}")
    p = int(match.group(2))
    body = match.group(1)
    big = [int(x) for x in body.split(",")] if body else []
    while big and big[0] == 0:
        big.pop(0)
    return PadicDigits.from_big_endian(big, p)


def format_digits(d: PadicDigits) -> str:
    """Запись [a_j,...,a_0]_p; ноль печатается как []_p."""
    big = d.big_endian
    return "[" + ",".join(str(a) for a in big) + f"]_{d.p}"


def format_digit_set(s: DigitSet) -> str:
    """Печать множества индексов по возрастанию: {0,1}."""
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"
