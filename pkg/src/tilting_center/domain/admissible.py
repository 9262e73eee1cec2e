"""
Допустимые множества, отражения v[S], v(S) и минимальные отрезки.

Множество S хранится как упорядоченный набор максимальных отрезков
(stretch) с зазором не меньше двух между соседними отрезками.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .padic import digit_at, digits, leading_index

Span = Tuple[int, int]

_SET_RE = re.compile(r"^\{\s*([0-9,|\s]*)\}$")


@dataclass(frozen=True, order=True)
class Stretch:
    """Отрезок {lo, ..., hi} подряд идущих индексов."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.lo > self.hi:
            raise ValueError(f"invalid stretch [{self.lo}, {self.hi}]")

    def elements(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, i: int) -> bool:
        return self.lo <= i <= self.hi

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class AdmissibleSet:
    """Конечное множество индексов в виде самого грубого разбиения на отрезки."""

    stretches: Tuple[Stretch, ...] = ()

    @classmethod
    def of(cls, indices: Iterable[int]) -> "AdmissibleSet":
        """Собирает множество из индексов, склеивая соседние в отрезки."""
        items = sorted(set(indices))
        if items and items[0] < 0:
            raise ValueError(f"indices must be >= 0, got {items[0]}")
        spans: List[Stretch] = []
        start = prev = None
        for i in items:
            if start is None:
                start = prev = i
            elif i == prev + 1:
                prev = i
            else:
                spans.append(Stretch(start, prev))
                start = prev = i
        if start is not None:
            spans.append(Stretch(start, prev))
        return cls(tuple(spans))

    @classmethod
    def span(cls, lo: int, hi: int) -> "AdmissibleSet":
        """Множество из одного отрезка {lo, ..., hi}."""
        return cls((Stretch(lo, hi),))

    @property
    def elements(self) -> FrozenSet[int]:
        return frozenset(i for s in self.stretches for i in s.elements())

    @property
    def bottom(self) -> int:
        if not self.stretches:
            raise ValueError("empty set has no minimum")
        return self.stretches[0].lo

    @property
    def top(self) -> int:
        if not self.stretches:
            raise ValueError("empty set has no maximum")
        return self.stretches[-1].hi

    @property
    def is_stretch(self) -> bool:
        return len(self.stretches) == 1

    def as_span(self) -> Span:
        """Пара (lo, hi) для множества из одного отрезка."""
        if not self.is_stretch:
            raise ValueError(f"{self} is not a single stretch")
        return self.stretches[0].lo, self.stretches[0].hi

    def __iter__(self) -> Iterator[int]:
        for s in self.stretches:
            yield from s.elements()

    def __len__(self) -> int:
        return sum(len(s) for s in self.stretches)

    def __bool__(self) -> bool:
        return bool(self.stretches)

    def __contains__(self, i: int) -> bool:
        return any(i in s for s in self.stretches)

    def union(self, other: "AdmissibleSet") -> "AdmissibleSet":
        return AdmissibleSet.of(self.elements | other.elements)

    def difference(self, other: "AdmissibleSet") -> "AdmissibleSet":
        return AdmissibleSet.of(self.elements - other.elements)

    def intersection(self, other: "AdmissibleSet") -> "AdmissibleSet":
        return AdmissibleSet.of(self.elements & other.elements)

    def issubset(self, other: "AdmissibleSet") -> bool:
        return self.elements <= other.elements

    def sort_key(self) -> Tuple[Span, ...]:
        return tuple((s.lo, s.hi) for s in self.stretches)

    def __str__(self) -> str:
        return format_set(self)


def format_set(S: AdmissibleSet) -> str:
    """Запись {5,4,3|0}: отрезки по убыванию, разделитель '|'."""
    parts = [
        ",".join(str(i) for i in reversed(s.elements())) for s in reversed(S.stretches)
    ]
    return "{" + "|".join(parts) + "}"


def parse_set(text: str) -> AdmissibleSet:
    """
    Разбирает запись {5,4,3|0}, {1,0} или {}.

    Raises:
        ValueError: при неверном формате
    """
    match = _SET_RE.match(text.strip())
    if not match:
        raise ValueError(f"ill-formed set: {text!r}")
    body = match.group(1).strip()
    if not body:
        return AdmissibleSet()
    tokens = [t.strip() for t in re.split(r"[,|]", body)]
    if any(not t.isdigit() for t in tokens):
        raise ValueError(f"ill-formed set: {text!r}")
    return AdmissibleSet.of(int(t) for t in tokens)


def distance(S: AdmissibleSet, T: AdmissibleSet) -> int:
    """
    d(S, T) = min |s - t|.

    Raises:
        ValueError: если одно из множеств пусто
    """
    if not S or not T:
        raise ValueError("distance needs two nonempty sets")
    return min(abs(s - t) for s in S for t in T)


def is_greater(T: AdmissibleSet, S: AdmissibleSet) -> bool:
    """T > S: каждый элемент T строго больше каждого элемента S."""
    return T.bottom > S.top


def is_geq(T: AdmissibleSet, S: AdmissibleSet) -> bool:
    """T >= S: каждый элемент T не меньше каждого элемента S."""
    return T.bottom >= S.top


def is_down_admissible(S: AdmissibleSet, v: int, p: int) -> bool:
    """Условия (i) a_{min} != 0 для каждого отрезка и (ii) замкнутость вверх по нулям."""
    for s in S.stretches:
        if digit_at(v, s.lo, p) == 0 or digit_at(v, s.hi + 1, p) == 0:
            return False
    return True


def is_up_admissible(S: AdmissibleSet, v: int, p: int) -> bool:
    """Условие (i) и замкнутость вверх по цифрам p-1."""
    for s in S.stretches:
        if digit_at(v, s.lo, p) == 0 or digit_at(v, s.hi + 1, p) == p - 1:
            return False
    return True


def _weighted_sum(v: int, lo: int, hi: int, p: int) -> int:
    ds = digits(v, p)
    return sum(ds[k] * p**k for k in range(lo, min(hi, len(ds) - 1) + 1))


def flip_down(v: int, lo: int, hi: int, p: int) -> int:
    """v[{lo..hi}] без проверки допустимости."""
    return v - 2 * _weighted_sum(v, lo, hi, p)


def flip_up(v: int, lo: int, hi: int, p: int) -> int:
    """v({lo..hi}) без проверки допустимости; цифры выше старшей считаются нулями."""
    return v - 2 * _weighted_sum(v, lo, hi, p) + 2 * p ** (hi + 1)


def reflect_down(v: int, S: AdmissibleSet, p: int) -> int:
    """
    Отражение вниз v[S]: смена знака цифр с индексами из S.

    Raises:
        ValueError: если S не допустимо вниз для v
    """
    if not is_down_admissible(S, v, p):
        raise ValueError(f"{S} is not down-admissible for {v} (p={p})")
    return v - 2 * sum(_weighted_sum(v, s.lo, s.hi, p) for s in S.stretches)


def reflect_up(v: int, S: AdmissibleSet, p: int) -> int:
    """
    Отражение вверх v(S): смена знака цифр из S и +2 над каждым отрезком.

    Raises:
        ValueError: если S не допустимо вверх для v
    """
    if not is_up_admissible(S, v, p):
        raise ValueError(f"{S} is not up-admissible for {v} (p={p})")
    result = v
    for s in S.stretches:
        result += -2 * _weighted_sum(v, s.lo, s.hi, p) + 2 * p ** (s.hi + 1)
    return result


def down_hull(S: AdmissibleSet, v: int, p: int) -> Optional[AdmissibleSet]:
    """
    Наименьшее допустимое вниз множество, содержащее S.

    Замыкание идет только вверх по нулевым цифрам. Если замыкание уходит за
    старшую цифру или отрезок начинается с нулевой цифры, оболочки нет.
    """
    if not S:
        return S
    j = leading_index(v, p)
    closure = set(S)
    for s in sorted(S):
        k = s
        while digit_at(v, k + 1, p) == 0:
            k += 1
            if k > j:
                return None
            closure.add(k)
    hull = AdmissibleSet.of(closure)
    if any(digit_at(v, s.lo, p) == 0 for s in hull.stretches):
        return None
    return hull


@lru_cache(maxsize=65536)
def min_down_spans(v: int, p: int) -> Tuple[Span, ...]:
    """Минимальные отрезки вниз как пары (lo, hi), по возрастанию."""
    ds = digits(v, p)
    spans = []
    for i in range(len(ds) - 1):
        if ds[i] == 0:
            continue
        k = i
        while ds[k + 1] == 0:
            k += 1
        spans.append((i, k))
    return tuple(spans)


@lru_cache(maxsize=65536)
def min_up_spans(v: int, p: int) -> Tuple[Span, ...]:
    """Минимальные отрезки вверх: от каждой ненулевой цифры через цифры p-1."""
    ds = digits(v, p)
    spans = []
    for i, a in enumerate(ds):
        if a == 0:
            continue
        k = i
        while k + 1 < len(ds) and ds[k + 1] == p - 1:
            k += 1
        spans.append((i, k))
    return tuple(spans)


def is_min_down(v: int, lo: int, hi: int, p: int) -> bool:
    return (lo, hi) in min_down_spans(v, p)


def is_min_up(v: int, lo: int, hi: int, p: int) -> bool:
    return (lo, hi) in min_up_spans(v, p)


def minimal_down_stretches(v: int, p: int) -> List[AdmissibleSet]:
    """Полный список минимальных допустимых вниз отрезков по возрастанию."""
    return [AdmissibleSet.span(lo, hi) for lo, hi in min_down_spans(v, p)]


def minimal_up_stretches(v: int, p: int) -> List[AdmissibleSet]:
    """Полный список минимальных допустимых вверх отрезков по возрастанию."""
    return [AdmissibleSet.span(lo, hi) for lo, hi in min_up_spans(v, p)]


def decompose_down(S: AdmissibleSet, v: int, p: int) -> List[Span]:
    """
    Разложение D_S на минимальные отрезки, в порядке применения (сверху вниз).

    Raises:
        ValueError: если S не допустимо вниз для v
    """
    if not is_down_admissible(S, v, p):
        raise ValueError(f"{S} is not down-admissible for {v} (p={p})")
    elements = S.elements
    spans = [
        (lo, hi) for lo, hi in min_down_spans(v, p) if all(k in elements for k in range(lo, hi + 1))
    ]
    return list(reversed(spans))


def decompose_up(S: AdmissibleSet, v: int, p: int) -> List[Span]:
    """
    Разложение U_S на минимальные отрезки в текущих вершинах, снизу вверх.

    Индексы выше старшей цифры v допустимы: после переноса +2 снизу там
    появляется ненулевая цифра.

    Raises:
        ValueError: если S не допустимо вверх для v
    """
    if not is_up_admissible(S, v, p):
        raise ValueError(f"{S} is not up-admissible for {v} (p={p})")
    remaining = set(S)
    spans: List[Span] = []
    current = v
    while remaining:
        lo = min(remaining)
        span = next((s for s in min_up_spans(current, p) if s[0] == lo), None)
        if span is None or any(k not in remaining for k in range(span[0], span[1] + 1)):
            raise ValueError(f"cannot split U_{S} at {v} into minimal stretches (p={p})")
        spans.append(span)
        current = flip_up(current, span[0], span[1], p)
        remaining -= set(range(span[0], span[1] + 1))
    return spans


def weyl_factors(v: int, p: int) -> List[int]:
    """Все v[S] для допустимых вниз S (объединений минимальных отрезков), по возрастанию."""
    spans = min_down_spans(v, p)
    result = set()
    for r in range(len(spans) + 1):
        for chosen in combinations(spans, r):
            # знаки меняются у цифр самого v, а не промежуточных вершин
            result.add(v - 2 * sum(_weighted_sum(v, lo, hi, p) for lo, hi in chosen))
    return sorted(result)
