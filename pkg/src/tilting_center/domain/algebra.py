"""
Алгебра Z: нормальные формы слов, композиция, базисы Hom и End.

Морфизм хранится как комбинация базисных слов. Композиция добавляет
буквы по одной к нормальному слову и переписывает результат до
нормальной формы; шаг "слово + буква" мемоизируется.
"""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .. import config
from .admissible import (
    AdmissibleSet,
    decompose_down,
    decompose_up,
    flip_down,
    flip_up,
    is_min_down,
    is_min_up,
    min_down_spans,
    min_up_spans,
    reflect_down,
)
from .arith import check_prime
from .models import (
    DOWN,
    UP,
    BasisWord,
    EndRing,
    Generator,
    Letter,
    Morphism,
    RawWord,
    Truncation,
)
from .rules import (
    RewriteBudgetExceeded,
    RewriteError,
    apply_letter,
    check_word,
    is_bad_pair,
    rewrite_pair,
)

logger = logging.getLogger(__name__)

STRATEGIES = ("leftmost", "rightmost")

WordKey = Tuple[int, Tuple[Letter, ...]]


def path_vertices(source: int, letters: Sequence[Letter], p: int) -> List[int]:
    """Вершины пути слова, включая начало и конец."""
    path = [source]
    for letter in letters:
        path.append(apply_letter(path[-1], letter, p))
    return path


def word_from_letters(source: int, letters: Sequence[Letter], p: int) -> BasisWord:
    """Базисное слово из букв нормальной формы."""
    target = path_vertices(source, letters, p)[-1]
    downs = tuple(sorted((lo, hi) for kind, lo, hi in letters if kind == DOWN))
    ups = tuple(sorted((lo, hi) for kind, lo, hi in letters if kind == UP))
    return BasisWord(source, target, downs, ups)


def is_normal(letters: Sequence[Letter]) -> bool:
    """Слово не содержит плохих соседних пар."""
    return not any(is_bad_pair(a, b) for a, b in zip(letters, letters[1:]))


class ZAlgebra:
    """
    Движок алгебры Z для фиксированного простого p.

    Таблица мемоизации принадлежит экземпляру; параллельные задачи
    создают собственные экземпляры.
    """

    def __init__(
        self,
        p: int,
        strategy: str = "leftmost",
        memo_limit: Optional[int] = None,
        step_budget: Optional[int] = None,
    ):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
        self.p = check_prime(p)
        self.strategy = strategy
        self.memo_limit = memo_limit if memo_limit is not None else config.MEMO_LIMIT
        self.step_budget = step_budget if step_budget is not None else config.STEP_BUDGET
        self._memo: Dict[Tuple[WordKey, Letter], Dict[WordKey, int]] = {}
        self.rule_firings = 0

    # --- переписывание -------------------------------------------------

    def _pick(self, letters: Tuple[Letter, ...]) -> Optional[int]:
        bad = [i for i in range(len(letters) - 1) if is_bad_pair(letters[i], letters[i + 1])]
        if not bad:
            return None
        return bad[0] if self.strategy == "leftmost" else bad[-1]

    def _reduce(self, source: int, letters: Tuple[Letter, ...]) -> Dict[WordKey, int]:
        """Нормальная форма слова как словарь {(source, буквы): коэффициент}."""
        p = self.p
        pending: Dict[Tuple[Letter, ...], int] = {letters: 1}
        result: Dict[WordKey, int] = {}
        steps = 0
        while pending:
            word, coeff = pending.popitem()
            if not coeff % p:
                continue
            i = self._pick(word)
            if i is None:
                key = (source, word)
                result[key] = (result.get(key, 0) + coeff) % p
                continue
            steps += 1
            if steps > self.step_budget:
                raise RewriteBudgetExceeded(
                    f"more than {self.step_budget} rule applications for a word at {source}"
                )
            x = path_vertices(source, word[:i], p)[-1]
            end = apply_letter(apply_letter(x, word[i], p), word[i + 1], p)
            for c, replacement in rewrite_pair(x, word[i], word[i + 1], p):
                if check_word(x, replacement, p) != end:
                    raise RewriteError(
                        f"rule at {x} for {word[i]}, {word[i + 1]} changed the endpoint"
                    )
                new = word[:i] + tuple(replacement) + word[i + 2 :]
                pending[new] = (pending.get(new, 0) + c * coeff) % p
        self.rule_firings += steps
        return {k: c for k, c in result.items() if c}

    def _append(self, key: WordKey, letter: Letter) -> Dict[WordKey, int]:
        memo_key = (key, letter)
        cached = self._memo.get(memo_key)
        if cached is not None:
            return cached
        source, letters = key
        reduced = self._reduce(source, letters + (letter,))
        if len(self._memo) >= self.memo_limit:
            logger.debug("memo table reached %s entries, clearing", self.memo_limit)
            self._memo.clear()
        self._memo[memo_key] = reduced
        return reduced

    def _fold(self, terms: Dict[WordKey, int], letters: Sequence[Letter]) -> Dict[WordKey, int]:
        p = self.p
        for letter in letters:
            nxt: Dict[WordKey, int] = {}
            for key, coeff in terms.items():
                for new_key, c in self._append(key, letter).items():
                    nxt[new_key] = (nxt.get(new_key, 0) + c * coeff) % p
            terms = {k: c for k, c in nxt.items() if c}
            if not terms:
                break
        return terms

    def _to_morphism(self, source: int, target: int, terms: Dict[WordKey, int]) -> Morphism:
        words = {}
        for (start, letters), coeff in terms.items():
            word = word_from_letters(start, letters, self.p)
            words[word] = words.get(word, 0) + coeff
        return Morphism.from_dict(self.p, source, target, words)

    # --- построение морфизмов ------------------------------------------

    def identity(self, v: int) -> Morphism:
        """Идемпотент e_{v-1}."""
        return Morphism.from_dict(self.p, v, v, {BasisWord(v, v): 1})

    def generator_morphism(self, g: Generator) -> Morphism:
        """
        Однословный морфизм образующей.

        Raises:
            ValueError: если отрезок не минимален в начале стрелки
        """
        kind, lo, hi = g.letter
        valid = is_min_down(g.source, lo, hi, self.p) if kind == DOWN else is_min_up(
            g.source, lo, hi, self.p
        )
        target = apply_letter(g.source, g.letter, self.p)
        if not valid or target != g.target:
            raise ValueError(f"{kind}{g.stretch} is not a generator {g.source}->{g.target}")
        return self.normalize_word(RawWord(g.source, (g.letter,)))

    def normalize_word(self, raw: RawWord) -> Morphism:
        """
        Нормальная форма произвольного слова.

        Raises:
            ValueError: если буква не является образующей в своей вершине
        """
        try:
            target = check_word(raw.source, list(raw.letters), self.p)
        except RewriteError as exc:
            raise ValueError(str(exc)) from None
        terms = self._fold({(raw.source, ()): raw.scalar % self.p}, raw.letters)
        return self._to_morphism(raw.source, target, terms)

    def generalized_down(self, S: AdmissibleSet, v: int) -> Morphism:
        """D_S e_{v-1} как произведение минимальных отрезков сверху вниз."""
        letters = tuple((DOWN, lo, hi) for lo, hi in decompose_down(S, v, self.p))
        return self.normalize_word(RawWord(v, letters))

    def generalized_up(self, S: AdmissibleSet, v: int) -> Morphism:
        """U_S e_{v-1} как произведение минимальных отрезков снизу вверх."""
        letters = tuple((UP, lo, hi) for lo, hi in decompose_up(S, v, self.p))
        return self.normalize_word(RawWord(v, letters))

    def loop(self, S: AdmissibleSet, v: int) -> Morphism:
        """Петля L_S e_{v-1} = U_S D_S e_{v-1} для допустимого вниз S."""
        lower = reflect_down(v, S, self.p)
        return self.compose(self.generalized_up(S, lower), self.generalized_down(S, v))

    # --- операции ------------------------------------------------------

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """
        Композиция f o g (сначала g).

        Raises:
            ValueError: если source(f) != target(g)
        """
        if f.source != g.target:
            raise ValueError(f"cannot compose {f.source}->{f.target} after {g.source}->{g.target}")
        p = self.p
        total: Dict[WordKey, int] = {}
        for g_word, g_coeff in g.terms:
            start = {(g_word.source, g_word.letters()): g_coeff}
            for f_word, f_coeff in f.terms:
                for key, c in self._fold(dict(start), f_word.letters()).items():
                    total[key] = (total.get(key, 0) + c * f_coeff) % p
        return self._to_morphism(g.source, f.target, total)

    def compose_all(self, *morphisms: Morphism) -> Morphism:
        """Композиция справа налево: compose_all(a, b, c) = a o b o c."""
        result = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            result = self.compose(m, result)
        return result

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        return f + g

    def scale(self, f: Morphism, c: int) -> Morphism:
        return f.scale(c)

    def transpose(self, m: Morphism) -> Morphism:
        """Антиинволюция D_S <-> U_S с обращением слов."""
        words = {BasisWord(w.target, w.source, w.ups, w.downs): c for w, c in m.terms}
        return Morphism.from_dict(m.p, m.target, m.source, words)

    def word_path(self, word: BasisWord) -> List[int]:
        return path_vertices(word.source, word.letters(), self.p)

    def truncate(self, m: Morphism, t: Truncation) -> Morphism:
        """Отбрасывает слова, путь которых выходит за границу N."""
        if m.source > t.bound or m.target > t.bound:
            return Morphism.zero(m.p, m.source, m.target)
        kept = {w: c for w, c in m.terms if max(self.word_path(w)) <= t.bound}
        return Morphism.from_dict(m.p, m.source, m.target, kept)

    # --- базисы --------------------------------------------------------

    def hom_basis(self, v: int, w: int) -> List[BasisWord]:
        """
        Базис e_{w-1} Z e_{v-1}: убывающие цепочки спусков, затем возрастающие подъемы.

        Returns:
            List[BasisWord]: слова в детерминированном порядке
        """
        p = self.p
        result: List[BasisWord] = []
        spans = min_down_spans(v, p)
        for r in range(len(spans) + 1):
            for chosen in combinations(spans, r):
                u = v
                for lo, hi in reversed(chosen):
                    u = flip_down(u, lo, hi, p)
                if u > w:
                    continue
                for ups in self._up_chains(u, w, -1):
                    result.append(BasisWord(v, w, tuple(chosen), tuple(ups)))
        return sorted(result, key=lambda word: word.sort_key())

    def _up_chains(self, u: int, w: int, floor: int) -> List[List[Tuple[int, int]]]:
        if u == w:
            chains: List[List[Tuple[int, int]]] = [[]]
        else:
            chains = []
        for lo, hi in min_up_spans(u, self.p):
            if lo <= floor:
                continue
            nxt = flip_up(u, lo, hi, self.p)
            if nxt > w:
                continue
            for tail in self._up_chains(nxt, w, hi):
                chains.append([(lo, hi)] + tail)
        return chains

    def hom_dim(self, v: int, w: int) -> int:
        return len(self.hom_basis(v, w))

    def end_ring(self, v: int) -> EndRing:
        """
        Петли L_S минимальных отрезков и проверка соотношений End(e_{v-1}).

        Проверяется: квадраты нулевые, петли коммутируют, петля объединения
        равна произведению петель его минимальных отрезков.
        """
        p = self.p
        ring = EndRing(vertex=v)
        spans = min_down_spans(v, p)
        for lo, hi in spans:
            ring.loops[(lo, hi)] = self.loop(AdmissibleSet.span(lo, hi), v)
        for loop in ring.loops.values():
            if not self.compose(loop, loop).is_zero:
                ring.squares_vanish = False
        for a, b in combinations(spans, 2):
            la, lb = ring.loops[a], ring.loops[b]
            if self.compose(la, lb) != self.compose(lb, la):
                ring.loops_commute = False
        for r in range(2, len(spans) + 1):
            for chosen in combinations(spans, r):
                union = AdmissibleSet.of(k for lo, hi in chosen for k in range(lo, hi + 1))
                product = self.identity(v)
                for span in chosen:
                    product = self.compose(ring.loops[span], product)
                if self.loop(union, v) != product:
                    ring.products_match = False
        if spans:
            full = AdmissibleSet.of(k for lo, hi in spans for k in range(lo, hi + 1))
            ring.maximal_loop = self.loop(full, v)
        else:
            ring.maximal_loop = self.identity(v)
        logger.debug("end ring at %s: %s loops, verified=%s", v, len(spans), ring.verified)
        return ring

    def is_normal_word(self, source: int, letters: Sequence[Letter]) -> bool:
        """Слово в нормальной форме и каждая буква - образующая."""
        try:
            check_word(source, list(letters), self.p)
        except RewriteError:
            return False
        return is_normal(letters)
