"""
Центр блока: петли l_i и L_v, проверка центральности, решатель коммутанта.

Все проверки идут на усечении Z^N с отступом M от границы: утверждения
о центре относятся к обратному пределу, а у границы усечения появляются
ложные центральные элементы.
"""

import logging
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

import numpy as np

from .admissible import AdmissibleSet, down_hull, reflect_down
from .algebra import ZAlgebra
from .arith import Fp
from .linalg import in_span, nullspace_basis, rank_mod_p, reduce_stream, row_reduce
from .models import (
    BasisWord,
    CasimirReport,
    CentralCandidate,
    CentralityFailure,
    CentralityReport,
    DigitLoop,
    FiberingReport,
    Generator,
    Morphism,
    SolverReport,
    TransportResult,
    Truncation,
    format_morphism,
    format_word,
)
from .padic import digit_at, digit_set, eves_below, is_eve
from .quiver import block, blocks, equiv_class, generators_between, neighbors

logger = logging.getLogger(__name__)

UNIT = "unit"
LOOP = "loop"

Column = Tuple[int, BasisWord]


# --- петли -------------------------------------------------------------


def digit_loop(engine: ZAlgebra, v: int, i: int) -> DigitLoop:
    """
    Петля l_i e_{v-1} = (-1)^{a_i} a_i U_h D_h e_{v-1}, h - оболочка {i}.

    Args:
        engine: Движок алгебры Z
        v: Вершина
        i: Индекс из D_v

    Returns:
        DigitLoop: петля как нормализованный морфизм

    Raises:
        ValueError: если i не из D_v или у {i} нет оболочки
    """
    p = engine.p
    if i not in digit_set(v, p):
        raise ValueError(f"{i} is not in D_{v} (p={p})")
    hull = down_hull(AdmissibleSet.of([i]), v, p)
    if hull is None:
        raise ValueError(f"{{{i}}} has no down-admissible hull at {v} (p={p})")
    a = digit_at(v, i, p)
    scalar = (-1) ** a * a
    return DigitLoop(index=i, vertex=v, morphism=engine.loop(hull, v).scale(scalar))


def digit_set_loop(engine: ZAlgebra, v: int, S: Iterable[int]) -> Morphism:
    """Произведение l_i e_{v-1} по i из S; для пустого S - идемпотент."""
    result = engine.identity(v)
    for i in sorted(set(S), reverse=True):
        result = engine.compose(digit_loop(engine, v, i).morphism, result)
    return result


def _class_members(v: int, p: int, bound: int) -> List[int]:
    return equiv_class(v, digit_set(v, p), p, bound)


def central_loop(engine: ZAlgebra, v: int, t: Truncation) -> CentralCandidate:
    """
    L_v = сумма l_{D_v} e_{w-1} по w из C_v, усеченная до w <= N.

    Raises:
        ValueError: если v - eve
    """
    p = engine.p
    if is_eve(v, p):
        raise ValueError(f"{v} is an eve for p={p}, L_v is not defined")
    loop_set = digit_set(v, p)
    support = {
        w: digit_set_loop(engine, w, loop_set) for w in _class_members(v, p, t.bound)
    }
    logger.debug("L_%s: %s vertices up to %s", v, len(support), t.bound)
    return CentralCandidate(kind=LOOP, key_vertex=v, support=support)


def _block_vertices(t: Truncation) -> List[int]:
    if t.eve is None:
        return list(range(1, t.bound + 1))
    return block(t.eve, t.p, t.bound).members


def unit_candidate(engine: ZAlgebra, t: Truncation) -> CentralCandidate:
    """Единица блока: сумма идемпотентов e_{v-1}, v <= N."""
    return CentralCandidate(
        kind=UNIT,
        key_vertex=None,
        support={v: engine.identity(v) for v in _block_vertices(t)},
    )


def single_loop_candidate(engine: ZAlgebra, v: int, S: AdmissibleSet) -> CentralCandidate:
    """Кандидат из одной петли U_S D_S e_{v-1} без переноса по классу."""
    return CentralCandidate(kind=LOOP, key_vertex=v, support={v: engine.loop(S, v)})


# --- центральность -----------------------------------------------------


def _touching_generators(support: Iterable[int], p: int, limit: int) -> List[Generator]:
    """Образующие с обоими концами <= limit, у которых хотя бы один конец в носителе."""
    seen: Set[Tuple[int, Tuple[str, int, int]]] = set()
    result: List[Generator] = []

    def keep(g: Generator) -> None:
        key = (g.source, g.letter)
        if g.source <= limit and g.target <= limit and key not in seen:
            seen.add(key)
            result.append(g)

    for w in sorted(support):
        if w > limit:
            continue
        for g in neighbors(w, p):
            keep(g)
            for back in generators_between(g.target, w, p):
                keep(back)
    return sorted(result, key=lambda g: (g.source, g.letter))


def _component(engine: ZAlgebra, c: CentralCandidate, v: int) -> Morphism:
    m = c.component(v)
    return m if m is not None else Morphism.zero(engine.p, v, v)


def _generator_label(g: Generator) -> str:
    return f"{g.kind}{g.stretch} {g.source}->{g.target}"


def check_centrality(
    engine: ZAlgebra, c: CentralCandidate, t: Truncation, margin: int = 0
) -> CentralityReport:
    """
    Проверяет c o g = g o c для образующих внутри [1, N - M].

    Returns:
        CentralityReport: число проверенных образующих и все несовпадения
    """
    limit = t.bound - margin
    report = CentralityReport(kind=c.kind, key_vertex=c.key_vertex)
    for g in _touching_generators(c.support, engine.p, limit):
        gm = engine.generator_morphism(g)
        left = engine.compose(_component(engine, c, g.target), gm)
        right = engine.compose(gm, _component(engine, c, g.source))
        report.checked += 1
        if left != right:
            report.failures.append(
                CentralityFailure(
                    generator=_generator_label(g),
                    source=g.source,
                    target=g.target,
                    left=format_morphism(left),
                    right=format_morphism(right),
                )
            )
    logger.debug(
        "centrality %s %s: %s generators, %s failures",
        c.kind,
        c.key_vertex,
        report.checked,
        len(report.failures),
    )
    return report


def central_products(
    engine: ZAlgebra, first: CentralCandidate, second: CentralCandidate
) -> Dict[int, Morphism]:
    """Покомпонентные произведения на общем носителе."""
    shared = sorted(set(first.support) & set(second.support))
    return {v: engine.compose(first.support[v], second.support[v]) for v in shared}


def transport_check(engine: ZAlgebra, v: int, i: int, k: int) -> TransportResult:
    """
    Перенос петли l_i вдоль U_k: l_i U_k e_{v[k]-1} против U_k l_i e_{v[k]-1}.

    При i == k обе стороны должны обнуляться. Если у i нет петли в v[k],
    правая сторона считается нулевой.

    Raises:
        ValueError: если i или k не из D_v или у {k} нет оболочки
    """
    p = engine.p
    if k not in digit_set(v, p):
        raise ValueError(f"{k} is not in D_{v} (p={p})")
    hull = down_hull(AdmissibleSet.of([k]), v, p)
    if hull is None:
        raise ValueError(f"{{{k}}} has no down-admissible hull at {v} (p={p})")
    lower = reflect_down(v, hull, p)
    up = engine.generalized_up(hull, lower)
    left = engine.compose(digit_loop(engine, v, i).morphism, up)
    try:
        lower_loop = digit_loop(engine, lower, i).morphism
    except ValueError:
        lower_loop = Morphism.zero(p, lower, lower)
    right = engine.compose(up, lower_loop)
    return TransportResult(vertex=v, index=i, along=k, left=left, right=right)


def example_obstruction(engine: ZAlgebra, v: int = 13, index: int = 1) -> CentralityReport:
    """
    Одиночная петля U_{i}D_{i} e_{v-1} без переноса не центральна.

    По умолчанию при p = 3 это петля веса 12: D_{0} переносит ее в
    U_{1,0}D_{1} e_12, а End(e_10) такого слова не содержит.
    """
    S = AdmissibleSet.of([index])
    candidate = single_loop_candidate(engine, v, S)
    bound = max([v] + [g.target for g in neighbors(v, engine.p)])
    return check_centrality(engine, candidate, Truncation(engine.p, bound), margin=0)


# --- решатель ----------------------------------------------------------


class CommutantSolver:
    """
    Система [z, g] = 0 для диагонального z = сумма z_v, z_v из End(e_{v-1}).

    Неизвестные - коэффициенты z_v в базисе нормальных слов; уравнения -
    коэффициенты z_w g - g z_u в базисе Hom(u, w) для каждой образующей
    g: u -> w внутри блока на [1, N].
    """

    def __init__(self, engine: ZAlgebra, t: Truncation, margin: int):
        if t.eve is None:
            raise ValueError("commutant solver needs a truncation with an eve")
        self.engine = engine
        self.t = t
        self.margin = margin
        self.members = _block_vertices(t)
        self.columns: Dict[Column, int] = {}
        for v in self.members:
            for word in engine.hom_basis(v, v):
                self.columns[(v, word)] = len(self.columns)
        self.equation_count = 0
        self.null_basis = np.zeros((0, len(self.columns)), dtype=np.int64)
        self.interior_basis = np.zeros((0, 0), dtype=np.int64)

    @property
    def interior_limit(self) -> int:
        return self.t.bound - self.margin

    def _interior_columns(self) -> List[int]:
        return [col for (v, _), col in self.columns.items() if v <= self.interior_limit]

    def _boundary_columns(self) -> List[int]:
        return [col for (v, _), col in self.columns.items() if v > self.interior_limit]

    def _word_morphism(self, word: BasisWord) -> Morphism:
        return Morphism.from_dict(self.engine.p, word.source, word.target, {word: 1})

    def equations(self) -> Iterator[Dict[int, int]]:
        """Разреженные строки системы, по одной на слово Hom(u, w)."""
        engine = self.engine
        inside = set(self.members)
        for u in self.members:
            for g in neighbors(u, engine.p):
                if g.target not in inside:
                    continue
                gm = engine.generator_morphism(g)
                rows: Dict[BasisWord, Dict[int, int]] = {}
                for word in engine.hom_basis(g.target, g.target):
                    col = self.columns[(g.target, word)]
                    for x, c in engine.compose(self._word_morphism(word), gm):
                        row = rows.setdefault(x, {})
                        row[col] = row.get(col, 0) + c
                for word in engine.hom_basis(u, u):
                    col = self.columns[(u, word)]
                    for x, c in engine.compose(gm, self._word_morphism(word)):
                        row = rows.setdefault(x, {})
                        row[col] = row.get(col, 0) - c
                for x in sorted(rows):
                    self.equation_count += 1
                    yield rows[x]

    def expected_keys(self) -> List[int]:
        """Минимальные элементы классов C_v, пересекающих внутреннюю часть."""
        p = self.engine.p
        keys = set()
        for v in self.members:
            if v > self.interior_limit or is_eve(v, p):
                continue
            keys.add(min(_class_members(v, p, self.t.bound)))
        return sorted(keys)

    def solve(self) -> SolverReport:
        p = self.engine.p
        ncols = len(self.columns)
        reduced = reduce_stream(self.equations(), ncols, p)
        rank = reduced.shape[0]
        self.null_basis = nullspace_basis(reduced, p) if ncols else self.null_basis
        interior = self._interior_columns()
        boundary = self._boundary_columns()
        projection = self.null_basis[:, interior]
        if projection.size:
            self.interior_basis = row_reduce(projection, p).matrix
        else:
            self.interior_basis = np.zeros((0, len(interior)), dtype=np.int64)
        keys = self.expected_keys()
        boundary_rank = rank_mod_p(self.null_basis[:, boundary], p) if boundary else 0
        report = SolverReport(
            p=p,
            bound=self.t.bound,
            margin=self.margin,
            unknowns=ncols,
            equations=self.equation_count,
            rank=rank,
            nullity=ncols - rank,
            interior_rank=self.interior_basis.shape[0],
            expected_interior_rank=(1 + len(keys)) if interior else 0,
            class_keys=keys,
            finitely_supported=(ncols - rank) - boundary_rank,
            basis=self._labelled(interior),
        )
        logger.info(
            "commutant p=%s N=%s M=%s: %s unknowns, %s equations, interior rank %s (expected %s)",
            p,
            self.t.bound,
            self.margin,
            report.unknowns,
            report.equations,
            report.interior_rank,
            report.expected_interior_rank,
        )
        return report

    def _labelled(self, interior: List[int]) -> List[Dict[str, int]]:
        labels = {col: format_word(word) for (_, word), col in self.columns.items()}
        result = []
        for row in self.interior_basis:
            result.append(
                {labels[interior[pos]]: int(c) for pos, c in enumerate(row) if c % self.engine.p}
            )
        return result

    def vector(self, c: CentralCandidate) -> np.ndarray:
        """Кандидат как вектор неизвестных; компоненты вне блока отбрасываются."""
        vec = np.zeros(len(self.columns), dtype=np.int64)
        for v, m in c.support.items():
            for word, coeff in m:
                col = self.columns.get((v, word))
                if col is not None:
                    vec[col] = coeff % self.engine.p
        return vec

    def interior_contains(self, c: CentralCandidate) -> bool:
        """Проекция кандидата на внутреннюю часть лежит в проекции решений."""
        interior = self._interior_columns()
        return in_span(self.vector(c)[interior], self.interior_basis, self.engine.p)


def commutant_solve(engine: ZAlgebra, t: Truncation, margin: int) -> SolverReport:
    """Решает систему коммутанта и возвращает отчет."""
    return CommutantSolver(engine, t, margin).solve()


# --- Казимир и блоки ---------------------------------------------------


def casimir_scalar(e: int, p: int) -> Fp:
    """
    Скаляр Казимира на блоке eve e: e^2 mod p.

    Raises:
        ValueError: если e не eve
    """
    if not is_eve(e, p):
        raise ValueError(f"{e} is not an eve for p={p}")
    return Fp(e * e, p)


def casimir_check(e: int, p: int, bound: int) -> CasimirReport:
    """Проверяет v^2 = e^2 (mod p) для всех вершин блока e до bound."""
    scalar = int(casimir_scalar(e, p))
    members = block(e, p, bound).members
    report = CasimirReport(p=p, eve=e, bound=bound, scalar=scalar, checked=len(members))
    report.violations = [v for v in members if (v * v - scalar) % p]
    return report


def block_fibering(
    engine: ZAlgebra, bound: int, loops: Optional[Iterable[int]] = None
) -> FiberingReport:
    """
    Блоки на [1, N] против eve и носители L_v.

    Число компонент должно совпасть с числом eve <= N, а каждый носитель
    L_v обязан лежать в одном блоке. loops - вершины, для которых строится
    L_v; по умолчанию все не-eve до N.
    """
    p = engine.p
    parts = blocks(p, bound)
    owner = {v: b.eve for b in parts for v in b.members}
    report = FiberingReport(p=p, bound=bound, blocks=len(parts), eves=len(eves_below(bound, p)))
    chosen = loops if loops is not None else [v for v in owner if not is_eve(v, p)]
    for v in sorted(chosen):
        support = _class_members(v, p, bound)
        report.loops_checked += 1
        if len({owner[w] for w in support}) != 1:
            report.misplaced.append(v)
    return report
