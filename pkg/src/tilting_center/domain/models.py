"""
Доменные модели данных.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Optional, Tuple

from .admissible import AdmissibleSet, Span, format_set
from .arith import Fp

# Буква слова: ("D" | "U", lo, hi) в порядке применения
Letter = Tuple[str, int, int]

DOWN = "D"
UP = "U"


@dataclass(frozen=True)
class Generator:
    """Стрелка D_S или U_S колчана с минимальным отрезком S."""

    kind: str
    stretch: AdmissibleSet
    source: int
    target: int

    @property
    def letter(self) -> Letter:
        lo, hi = self.stretch.as_span()
        return (self.kind, lo, hi)


@dataclass
class Block:
    """Компонента связности колчана, содержащая eve."""

    eve: int
    p: int
    bound: int
    members: List[int] = field(default_factory=list)

    def __contains__(self, v: int) -> bool:
        return v in self.members


@dataclass(frozen=True, order=True)
class BasisWord:
    """
    Слово нормальной формы e_{w-1} U...U D...D e_{v-1}.

    downs и ups хранятся по возрастанию отрезков; спуски применяются
    от старшего отрезка к младшему, подъемы от младшего к старшему.
    """

    source: int
    target: int
    downs: Tuple[Span, ...] = ()
    ups: Tuple[Span, ...] = ()

    def letters(self) -> Tuple[Letter, ...]:
        """Буквы в порядке применения."""
        return tuple((DOWN, lo, hi) for lo, hi in reversed(self.downs)) + tuple(
            (UP, lo, hi) for lo, hi in self.ups
        )

    @property
    def is_identity(self) -> bool:
        return not self.downs and not self.ups

    def sort_key(self) -> Tuple[Tuple[Span, ...], Tuple[Span, ...]]:
        return self.downs, self.ups

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class Morphism:
    """
    Конечная F_p-линейная комбинация базисных слов с общими концами.

    Слово - любой объект с source, target, sort_key() и текстовой записью;
    сложение и умножение на скаляр сохраняют класс морфизма.
    """

    p: int
    source: int
    target: int
    terms: Tuple[Tuple[BasisWord, int], ...] = ()

    @classmethod
    def from_dict(cls, p: int, source: int, target: int, terms: Dict[BasisWord, int]) -> "Morphism":
        """Собирает морфизм, отбрасывая нулевые коэффициенты и сортируя слова."""
        items = []
        for word, coeff in terms.items():
            c = coeff % p
            if not c:
                continue
            if word.source != source or word.target != target:
                raise ValueError(
                    f"word {word.source}->{word.target} does not fit {source}->{target}"
                )
            items.append((word, c))
        items.sort(key=lambda item: item[0].sort_key())
        return cls(p, source, target, tuple(items))

    @classmethod
    def zero(cls, p: int, source: int, target: int) -> "Morphism":
        return cls(p, source, target, ())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[BasisWord, int]:
        return dict(self.terms)

    def coefficient(self, word: BasisWord) -> Fp:
        return Fp(self.as_dict().get(word, 0), self.p)

    def words(self) -> List[BasisWord]:
        return [word for word, _ in self.terms]

    def __iter__(self) -> Iterator[Tuple[BasisWord, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check_parallel(self, other: "Morphism") -> None:
        if (self.p, self.source, self.target) != (other.p, other.source, other.target):
            raise ValueError(
                f"cannot add {self.source}->{self.target} and {other.source}->{other.target}"
            )

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        total = self.as_dict()
        for word, coeff in other.terms:
            total[word] = total.get(word, 0) + coeff
        return self._rebuild(total)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, c: int) -> "Morphism":
        c = int(c)
        return self._rebuild({w: c * k for w, k in self.terms})

    def _rebuild(self, terms: Dict) -> "Morphism":
        built = Morphism.from_dict(self.p, self.source, self.target, terms)
        return replace(self, terms=built.terms)

    def __str__(self) -> str:
        return format_morphism(self)


def format_word(word: BasisWord) -> str:
    """
    Запись слова справа налево: e[w] U{1,0} D{1} e[v].

    Тождественное слово печатается как e[v].
    """
    if word.is_identity:
        return f"e[{word.source}]"
    written = []
    for kind, lo, hi in reversed(word.letters()):
        written.append(kind + format_set(AdmissibleSet.span(lo, hi)))
    return f"e[{word.target}] " + " ".join(written) + f" e[{word.source}]"


def format_morphism(m: Morphism) -> str:
    """Сумма вида 2*e[11] U{1,0} D{1} e[13] + e[13]; ноль печатается как 0."""
    if m.is_zero:
        return "0"
    parts = []
    for word, coeff in m.terms:
        text = str(word)
        parts.append(text if coeff == 1 else f"{coeff}*{text}")
    return " + ".join(parts)


@dataclass(frozen=True)
class RawWord:
    """Произвольное слово в образующих со скаляром; буквы в порядке применения."""

    source: int
    letters: Tuple[Letter, ...] = ()
    scalar: int = 1


@dataclass(frozen=True)
class WordTerm:
    """
    Слагаемое записи c*e[w] U{..} D{..} e[v].

    Буквы хранятся в порядке применения и могут нести объединения отрезков;
    target задан, только если запись начинается с e[w].
    """

    source: int
    letters: Tuple[Tuple[str, AdmissibleSet], ...] = ()
    coeff: int = 1
    target: Optional[int] = None


@dataclass(frozen=True)
class Truncation:
    """Фактор Z^N: идемпотенты выше N обнулены."""

    p: int
    bound: int
    eve: Optional[int] = None

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError(f"truncation bound must be >= 1, got {self.bound}")


@dataclass
class EndRing:
    """Представление End(e_{v-1}) через петли минимальных отрезков."""

    vertex: int
    loops: Dict[Span, Morphism] = field(default_factory=dict)
    maximal_loop: Optional[Morphism] = None
    squares_vanish: bool = True
    loops_commute: bool = True
    products_match: bool = True

    @property
    def verified(self) -> bool:
        return self.squares_vanish and self.loops_commute and self.products_match


@dataclass(frozen=True)
class DigitLoop:
    """Петля l_i e_{v-1} = (-1)^{a_i} a_i U_h D_h e_{v-1}, h = hull({i})."""

    index: int
    vertex: int
    morphism: Morphism


@dataclass
class CentralCandidate:
    """Усеченное разложение 1 или L_v по диагональным компонентам."""

    kind: str
    key_vertex: Optional[int]
    support: Dict[int, Morphism] = field(default_factory=dict)

    def component(self, v: int) -> Optional[Morphism]:
        return self.support.get(v)


@dataclass
class CentralityFailure:
    """Образующая, с которой кандидат не коммутирует."""

    generator: str
    source: int
    target: int
    left: str
    right: str


@dataclass
class CentralityReport:
    """Результат проверки центральности кандидата."""

    kind: str
    key_vertex: Optional[int]
    checked: int = 0
    failures: List[CentralityFailure] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.failures


@dataclass
class SolverReport:
    """Результат решения системы [z, g] = 0 на усечении."""

    p: int
    bound: int
    margin: int
    unknowns: int = 0
    equations: int = 0
    rank: int = 0
    nullity: int = 0
    interior_rank: int = 0
    expected_interior_rank: int = 0
    class_keys: List[int] = field(default_factory=list)
    finitely_supported: int = 0
    basis: List[Dict[str, int]] = field(default_factory=list)

    @property
    def matches_expected(self) -> bool:
        return self.interior_rank == self.expected_interior_rank


@dataclass(frozen=True)
class TransportResult:
    """Сравнение l_i U_k и U_k l_i на вершине v[k]."""

    vertex: int
    index: int
    along: int
    left: Morphism
    right: Morphism

    @property
    def commutes(self) -> bool:
        return self.left == self.right

    @property
    def holds(self) -> bool:
        """Равенство сторон; при i == k обе стороны нулевые, иначе ненулевые."""
        if not self.commutes:
            return False
        if self.index == self.along:
            return self.left.is_zero
        return not self.left.is_zero


@dataclass
class CasimirReport:
    """Проверка v^2 = e^2 (mod p) на вершинах блока."""

    p: int
    eve: int
    bound: int
    scalar: int
    checked: int = 0
    violations: List[int] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.violations


@dataclass
class FiberingReport:
    """Блоки на [1, N] против eve и носителей L_v."""

    p: int
    bound: int
    blocks: int = 0
    eves: int = 0
    loops_checked: int = 0
    misplaced: List[int] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.blocks == self.eves and not self.misplaced
