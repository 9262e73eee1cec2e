"""
Соотношения алгебры Z как ориентированные правила переписывания.

Пара соседних букв (A, B): A применяется в вершине x, затем B.
Нормальная форма: сначала спуски по убыванию отрезков, затем подъемы
по возрастанию. Любое плохое соседство заменяется линейной комбинацией
слов, у которых внутренние вершины пути строго меньше.
"""

from typing import List, Optional, Tuple

from .admissible import (
    AdmissibleSet,
    decompose_down,
    decompose_up,
    down_hull,
    flip_down,
    flip_up,
    is_min_down,
    is_min_up,
    min_down_spans,
)
from .arith import f_value, g_value
from .models import DOWN, UP, Letter
from .padic import digit_at

Replacement = Tuple[int, List[Letter]]

CONTAINMENT = "containment"
FAR = "far-commutativity"
ADJACENCY = "adjacency"
ADJACENCY_H = "adjacency-h"
OVERLAP = "overlap"
ZIGZAG = "zigzag"


class RewriteError(RuntimeError):
    """Правило дало слово с недопустимой буквой (признак ошибки движка)."""


class RewriteBudgetExceeded(RuntimeError):
    """Исчерпан лимит применений правил на одну нормализацию."""


def apply_letter(x: int, letter: Letter, p: int) -> int:
    kind, lo, hi = letter
    if kind == DOWN:
        return flip_down(x, lo, hi, p)
    return flip_up(x, lo, hi, p)


def _span_set(a: Letter) -> AdmissibleSet:
    return AdmissibleSet.span(a[1], a[2])


def _dist(a: Letter, b: Letter) -> int:
    """Расстояние между отрезками; 0 при пересечении."""
    if a[2] < b[1]:
        return b[1] - a[2]
    if b[2] < a[1]:
        return a[1] - b[2]
    return 0


def _inside(a: Letter, b: Letter) -> bool:
    """Отрезок a содержится в отрезке b."""
    return b[1] <= a[1] and a[2] <= b[2]


def is_bad_pair(a: Letter, b: Letter) -> bool:
    """Пара не встречается в нормальной форме."""
    if a[0] == UP and b[0] == DOWN:
        return True
    if a[0] == DOWN and b[0] == DOWN:
        return not b[2] < a[1]
    if a[0] == UP and b[0] == UP:
        return not b[1] > a[2]
    return False


def classify(a: Letter, b: Letter) -> Optional[str]:
    """Имя правила для плохой пары или None."""
    if not is_bad_pair(a, b):
        return None
    d = _dist(a, b)
    if a[0] == UP and b[0] == DOWN:
        if d == 0:
            return ZIGZAG
        return ADJACENCY if d == 1 else FAR
    if a[0] == DOWN:
        if _inside(b, a):
            return CONTAINMENT
        if d == 0:
            return OVERLAP
        return ADJACENCY_H if d == 1 else FAR
    if _inside(a, b):
        return CONTAINMENT
    if d == 0:
        return OVERLAP
    return ADJACENCY_H if d == 1 else FAR


def _gen_down(S: AdmissibleSet, x: int, p: int) -> List[Letter]:
    return [(DOWN, lo, hi) for lo, hi in decompose_down(S, x, p)]


def _gen_up(S: AdmissibleSet, x: int, p: int) -> List[Letter]:
    return [(UP, lo, hi) for lo, hi in decompose_up(S, x, p)]


def _walk(x: int, letters: List[Letter], p: int) -> int:
    for letter in letters:
        x = apply_letter(x, letter, p)
    return x


def _zigzag(x: int, a: Letter, p: int) -> List[Replacement]:
    """D_S U_S e = U_h D_h G_S e + U_T U_h D_h D_T F_S e, h = hull(S)."""
    S = _span_set(a)
    hull = down_hull(S, x, p)
    if hull is None:
        return []
    scalar_digit = digit_at(x, a[2] + 1, p)
    result: List[Replacement] = []
    g = g_value(scalar_digit, p)
    if g:
        lower = _gen_down(hull, x, p)
        result.append((g, lower + _gen_up(hull, _walk(x, lower, p), p)))
    f = f_value(scalar_digit, p)
    tee = next((s for s in min_down_spans(x, p) if s[0] > hull.top), None)
    if f and tee is not None:
        t_letter = (DOWN, tee[0], tee[1])
        y = apply_letter(x, t_letter, p)
        lower = _gen_down(hull, y, p)
        z = _walk(y, lower, p)
        upper = _gen_up(hull, z, p)
        result.append((f, [t_letter] + lower + upper + [(UP, tee[0], tee[1])]))
    return result


def rewrite_pair(x: int, a: Letter, b: Letter, p: int) -> List[Replacement]:
    """
    Применяет правило к плохой паре (a в x, затем b).

    Returns:
        List[Replacement]: пары (коэффициент, буквы); пустой список означает ноль

    Raises:
        RewriteError: если пара не плохая или правило дало недопустимое слово
    """
    rule = classify(a, b)
    if rule is None:
        raise RewriteError(f"pair {a}, {b} at {x} is already normal")
    try:
        return _rewrite(rule, x, a, b, p)
    except ValueError as exc:
        raise RewriteError(f"{rule} at {x} for {a}, {b}: {exc}") from exc


def _rewrite(rule: str, x: int, a: Letter, b: Letter, p: int) -> List[Replacement]:
    if rule == CONTAINMENT:
        return []
    if rule == FAR:
        return [(1, [b, a])]
    if a[0] == UP and b[0] == DOWN:
        if rule == ZIGZAG:
            return _zigzag(x, a, p)
        union = _span_set(a).union(_span_set(b))
        if b[1] > a[2]:
            return [(1, _gen_down(union, x, p))]
        return [(1, _gen_up(union, x, p))]
    if a[0] == DOWN and b[0] == DOWN:
        if rule == OVERLAP:
            s = b[1]
            if s != a[2]:
                raise RewriteError(f"overlap of {a}, {b} at {x} is not a single shared index")
            rest = AdmissibleSet.span(s + 1, b[2])
            lower = _gen_down(rest, x, p)
            y = _walk(x, lower, p)
            z = apply_letter(y, a, p)
            return [(1, lower + [a] + _gen_up(AdmissibleSet.span(s, s), z, p))]
        # b > a на расстоянии 1: D_{S'} D_S e = U_S D_{S'} H_S e
        h = g_value((digit_at(x, a[2] + 1, p) - 1) % p, p)
        if not h:
            return []
        return [(h, [b, (UP, a[1], a[2])])]
    # два подъема
    if rule == OVERLAP:
        s = a[1]
        if s != b[2]:
            raise RewriteError(f"overlap of {a}, {b} at {x} is not a single shared index")
        lower = [(DOWN, s, s)]
        y = _walk(x, lower, p)
        middle = [b]
        z = _walk(y, middle, p)
        return [(1, lower + middle + _gen_up(AdmissibleSet.span(s + 1, a[2]), z, p))]
    # b < a на расстоянии 1: U_S U_{S'} e = H_S U_{S'} D_S e, H читается в конце
    end = apply_letter(apply_letter(x, a, p), b, p)
    h = g_value((digit_at(end, b[2] + 1, p) - 1) % p, p)
    if not h:
        return []
    return [(h, [(DOWN, b[1], b[2]), a])]


def _valid_at(x: int, letter: Letter, p: int) -> bool:
    kind, lo, hi = letter
    if kind == DOWN:
        return is_min_down(x, lo, hi, p)
    return is_min_up(x, lo, hi, p)


def check_word(x: int, letters: List[Letter], p: int) -> int:
    """
    Проверяет минимальность каждой буквы в текущей вершине.

    Returns:
        int: конечная вершина

    Raises:
        RewriteError: если буква не является образующей в своей вершине
    """
    for letter in letters:
        if not _valid_at(x, letter, p):
            raise RewriteError(f"{letter} is not a generator at {x} (p={p})")
        x = apply_letter(x, letter, p)
    return x
