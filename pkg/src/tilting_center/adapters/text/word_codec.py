"""
Текстовая запись слов и морфизмов: 2*e[11] U{1,0} D{1} e[13] + e[13].

Буквы читаются справа налево, как композиция отображений.
"""

import re
from typing import List, Optional, Tuple

from ...domain.admissible import AdmissibleSet, parse_set
from ...domain.models import DOWN, BasisWord, Morphism, WordTerm, format_morphism
from ...ports.codec import MorphismCodec

_IDEMPOTENT_RE = re.compile(r"^e\[(-?\d+)\]$")
_LETTER_RE = re.compile(r"^([DU])(\{[0-9,|\s]*\})$")
_COEFF_RE = re.compile(r"^(-?\d+)\s*\*\s*(.*)$", re.S)
# пробелы внутри {...} не разделяют токены
_TOKEN_RE = re.compile(r"e\[-?\d+\]|[DU]\{[^}]*\}|\S+")


def _idempotent(token: str) -> Optional[int]:
    match = _IDEMPOTENT_RE.match(token)
    return int(match.group(1)) if match else None


def parse_term(text: str) -> WordTerm:
    """
    Разбирает одно слагаемое.

    Raises:
        ValueError: если нет e[v] справа или встречен неизвестный токен
    """
    body = text.strip()
    coeff = 1
    match = _COEFF_RE.match(body)
    if match:
        coeff = int(match.group(1))
        body = match.group(2)
    tokens = _TOKEN_RE.findall(body)
    if not tokens:
        raise ValueError(f"empty word: {text!r}")
    source = _idempotent(tokens[-1])
    if source is None:
        raise ValueError(f"word must end with e[v]: {text!r}")
    middle = tokens[:-1]
    target = None
    if middle and _idempotent(middle[0]) is not None:
        target = _idempotent(middle[0])
        middle = middle[1:]
    letters: List[Tuple[str, AdmissibleSet]] = []
    for token in reversed(middle):
        letter = _LETTER_RE.match(token)
        if not letter:
            raise ValueError(f"unknown token {token!r} in {text!r}")
        letters.append((letter.group(1), parse_set(letter.group(2))))
    if len(tokens) == 1:
        target = source
    return WordTerm(source=source, letters=tuple(letters), coeff=coeff, target=target)


def parse_expression(text: str) -> List[WordTerm]:
    """
    Разбирает сумму слагаемых через ' + '.

    Raises:
        ValueError: при неверном формате
    """
    parts = [part for part in re.split(r"\s\+\s", text.strip()) if part.strip()]
    if not parts:
        raise ValueError("empty expression")
    return [parse_term(part) for part in parts]


def _basis_word(term: WordTerm) -> BasisWord:
    downs = []
    ups = []
    for kind, S in term.letters:
        if not S.is_stretch:
            raise ValueError(f"normal words use single stretches, got {kind}{S}")
        if kind == DOWN:
            if ups:
                raise ValueError("Down after Up is not a normal word")
            downs.append(S.as_span())
        else:
            ups.append(S.as_span())
    if term.target is None and term.letters:
        raise ValueError("normal word needs e[w] on the left")
    target = term.source if term.target is None else term.target
    return BasisWord(term.source, target, tuple(reversed(downs)), tuple(ups))


class TextMorphismCodec(MorphismCodec):
    """Кодек морфизмов в нормальной форме через запись e[w] ... e[v]."""

    def encode(self, m: Morphism) -> str:
        return format_morphism(m)

    def decode(
        self,
        text: str,
        p: int,
        source: Optional[int] = None,
        target: Optional[int] = None,
    ) -> Morphism:
        """
        Восстанавливает морфизм из записи encode.

        Нулевой морфизм "0" концов не несет: их нужно передать явно.

        Raises:
            ValueError: при неверном формате, ненормальном слове или разных концах
        """
        if text.strip() == "0":
            if source is None or target is None:
                raise ValueError("zero morphism needs explicit endpoints")
            return Morphism.zero(p, source, target)
        terms = {}
        for term in parse_expression(text):
            word = _basis_word(term)
            terms[word] = terms.get(word, 0) + term.coeff
        ends = {(w.source, w.target) for w in terms}
        if len(ends) != 1:
            raise ValueError(f"terms have different endpoints: {sorted(ends)}")
        src, tgt = ends.pop()
        return Morphism.from_dict(p, src, tgt, terms)
