"""
Варианты алгебры Z: квантовый случай, G1T и G2T.

Все три - мономиально-биномиальные факторы алгебр путей: прямые двойные
шаги зануляются, петли одного направления совпадают, полные квадраты
коммутируют. Путь хранится как кортеж индексов вершин; нормальная
форма - лексикографически наименьший путь своего класса или None, если
класс содержит зануляющийся фрагмент.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from .. import config
from .arith import check_prime
from .linalg import in_span, nullspace_basis, reduce_stream, row_reduce
from .models import Morphism

logger = logging.getLogger(__name__)

QUANTUM = "quantum"
QUANTUM_GENERIC = "quantum-generic"
G1T = "g1t"
G2T = "g2t"
KINDS = (QUANTUM, QUANTUM_GENERIC, G1T, G2T)

# оси стрелок: отражение в нулевой или первой цифре
HORIZONTAL = 0
VERTICAL = 1

Path = Tuple[int, ...]
Element = Dict[Path, int]


@dataclass(frozen=True)
class VariantSpec:
    """Вид варианта и основание: k для квантового случая, p для G1T/G2T."""

    kind: str
    base: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown variant {self.kind!r}, expected one of {KINDS}")
        if self.kind == QUANTUM and self.base < 2:
            raise ValueError(f"quantum root order must be >= 2, got {self.base}")
        if self.kind in (G1T, G2T):
            check_prime(self.base)
        if self.kind == G2T and self.base < 3:
            raise ValueError("g2t grid needs p >= 3")

    @property
    def field_prime(self) -> int:
        """Простое поле коэффициентов; для квантовых вариантов - из конфигурации."""
        if self.kind in (QUANTUM, QUANTUM_GENERIC):
            return config.QUANTUM_PRIME
        return self.base

    def __str__(self) -> str:
        return self.kind if self.kind == QUANTUM_GENERIC else f"{self.kind}({self.base})"


@dataclass(frozen=True)
class VariantWord:
    """Нормальный путь варианта и его запись e[конец] ... e[начало]."""

    path: Path
    text: str

    @property
    def source(self) -> int:
        return self.path[0]

    @property
    def target(self) -> int:
        return self.path[-1]

    @property
    def is_identity(self) -> bool:
        return len(self.path) == 1

    def sort_key(self) -> Tuple[int, Path]:
        return len(self.path), self.path

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class VariantMorphism(Morphism):
    """Морфизм алгебры варианта: слагаемые - нормальные пути."""

    spec: Optional[VariantSpec] = None


@dataclass(frozen=True)
class GridVertex:
    """Вершина варианта: индекс i, значение v_i и позиция в сетке."""

    index: int
    value: int
    row: int = 0
    column: int = 0


def sequence_value(i: int, base: int) -> int:
    """
    v_i: v_0 = 1, v_{i+1} = v_i(0); отрицательные индексы отражением.

    v_i = base*i + 1 для четного i >= 0, base*(i+1) - 1 для нечетного;
    v_{-i} = -v_i + 2 для четного i, -v_i + 2*base - 2 для нечетного.
    """
    if i >= 0:
        return base * i + 1 if i % 2 == 0 else base * (i + 1) - 1
    k = -i
    mirror = sequence_value(k, base)
    return -mirror + 2 if k % 2 == 0 else -mirror + 2 * base - 2


def grid_position(i: int, p: int) -> Tuple[int, int]:
    """
    Позиция (строка, столбец) индекса i в сетке G2T.

    Строка r = floor(i / p); в четных строках столбцы 0..p-1 слева направо,
    в нечетных 1..p справа налево.
    """
    row = i // p
    if row % 2 == 0:
        return row, i - row * p
    return row, (row + 1) * p - i


def grid_index(row: int, column: int, p: int) -> Optional[int]:
    """Индекс вершины в позиции сетки или None, если такой позиции нет."""
    if row % 2 == 0:
        return row * p + column if 0 <= column <= p - 1 else None
    return (row + 1) * p - column if 1 <= column <= p else None


def column_of(i: int, p: int) -> int:
    return grid_position(i, p)[1]


def column_indices(j: int, p: int, index_bound: int) -> List[int]:
    """Индексы столбца c(j) с |i| <= index_bound."""
    return [i for i in range(-index_bound, index_bound + 1) if column_of(i, p) == j]


def _window_indices(spec: VariantSpec, bound: int) -> List[int]:
    if spec.kind == QUANTUM_GENERIC:
        return list(range(1, bound + 1))
    if spec.kind == QUANTUM:
        result = []
        i = 0
        while sequence_value(i, spec.base) <= bound:
            result.append(i)
            i += 1
        return result
    if spec.kind == G1T:
        result = []
        i = 0
        while sequence_value(i, spec.base) <= bound:
            result.append(i)
            i += 1
        i = -1
        while abs(sequence_value(i, spec.base)) <= bound:
            result.append(i)
            i -= 1
        return sorted(result)
    p = spec.base
    return list(range(-bound * p, (bound + 1) * p))


def variant_vertices(spec: VariantSpec, bound: int) -> List[GridVertex]:
    """
    Вершины окна варианта в порядке индексов.

    Окно: квантовый случай - v_i <= bound; G1T - |v_i| <= bound;
    G2T - целые строки сетки с |r| <= bound.

    Raises:
        ValueError: если bound < 1
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    result = []
    for i in _window_indices(spec, bound):
        if spec.kind == QUANTUM_GENERIC:
            result.append(GridVertex(index=i, value=i))
            continue
        value = sequence_value(i, spec.base)
        if spec.kind == G2T:
            row, column = grid_position(i, spec.base)
            result.append(GridVertex(index=i, value=value, row=row, column=column))
        else:
            result.append(GridVertex(index=i, value=value))
    return result


def steinberg_reference(spec: VariantSpec) -> Optional[VariantSpec]:
    """
    Вариант, которому эквивалентно слагаемое Стейнберга.

    Квантовое и G1T слагаемые полупросты (как общий квантовый случай),
    слагаемое Стейнберга G2T эквивалентно G1T.
    """
    if spec.kind in (QUANTUM, G1T):
        return VariantSpec(QUANTUM_GENERIC)
    if spec.kind == G2T:
        return VariantSpec(G1T, spec.base)
    return None


def is_steinberg_vertex(spec: VariantSpec, v: int, shifted: bool = False) -> bool:
    """
    Лежит ли вершина в слагаемом Стейнберга: a_0 = 0 для v (или для v-1 при shifted).
    """
    if spec.kind == QUANTUM_GENERIC:
        return False
    n = v - 1 if shifted else v
    return n % spec.base == 0


class VariantAlgebra:
    """
    Алгебра варианта с нормальными формами путей.

    Вычисления идут в полной (бесконечной) алгебре; окно задает только
    идемпотенты, по которым строится решатель центра.
    """

    def __init__(self, spec: VariantSpec):
        self.spec = spec
        self.p = spec.field_prime
        self._normal: Dict[Path, Optional[Path]] = {}
        self._hom: Dict[Tuple[int, int], List[Path]] = {}

    # --- колчан --------------------------------------------------------

    def arrows(self, i: int) -> List[Tuple[int, int]]:
        """Стрелки из i как пары (ось, конец)."""
        kind = self.spec.kind
        if kind == QUANTUM_GENERIC:
            return []
        if kind == QUANTUM:
            ends = [i - 1, i + 1] if i >= 1 else [i + 1]
            return [(HORIZONTAL, j) for j in ends]
        if kind == G1T:
            return [(HORIZONTAL, i - 1), (HORIZONTAL, i + 1)]
        p = self.spec.base
        row, column = grid_position(i, p)
        result = []
        for j in (i - 1, i + 1):
            if grid_position(j, p)[0] == row:
                result.append((HORIZONTAL, j))
        if 1 <= column <= p - 1:
            for r in (row - 1, row + 1):
                result.append((VERTICAL, grid_index(r, column, p)))
        return sorted(result)

    def _axis(self, i: int, j: int) -> Optional[int]:
        for axis, end in self.arrows(i):
            if end == j:
                return axis
        return None

    def _along(self, i: int, axis: int) -> List[int]:
        return [j for a, j in self.arrows(i) if a == axis]

    def letter(self, i: int, j: int) -> str:
        """Имя стрелки i -> j: U или D по росту значения, с осью {0} или {1}."""
        axis = self._axis(i, j)
        if axis is None:
            raise ValueError(f"no arrow {i} -> {j} in {self.spec}")
        if self.spec.kind == G2T:
            up = sequence_value(j, self.spec.base) > sequence_value(i, self.spec.base)
        else:
            up = j > i
        return ("U" if up else "D") + "{" + str(axis) + "}"

    def describe(self, path: Path) -> str:
        """Путь в записи e[конец] ... e[начало], стрелки справа налево."""
        letters = [self.letter(a, b) for a, b in zip(path, path[1:])]
        parts = [f"e[{path[-1]}]"] + letters[::-1]
        if len(path) > 1:
            parts.append(f"e[{path[0]}]")
        return " ".join(parts)

    def check_path(self, path: Path) -> None:
        """
        Raises:
            ValueError: если соседние вершины пути не соединены стрелкой
        """
        for a, b in zip(path, path[1:]):
            if self._axis(a, b) is None:
                raise ValueError(f"no arrow {a} -> {b} in {self.spec}")

    # --- соотношения ---------------------------------------------------

    def _is_zero_window(self, path: Path, pos: int) -> bool:
        a, b, c = path[pos : pos + 3]
        axis_ab, axis_bc = self._axis(a, b), self._axis(b, c)
        if axis_ab == axis_bc and a != c:
            return True
        return self.spec.kind == QUANTUM and a == c == 0

    def _is_zero_detour(self, path: Path, pos: int) -> bool:
        # x -> y -> (вертикальная петля в y) -> x при x без вертикальных стрелок
        x, y, y2, y3, x2 = path[pos : pos + 5]
        if x != x2 or y != y3 or self._along(x, VERTICAL):
            return False
        return self._axis(y, y2) == VERTICAL

    def _has_zero_pattern(self, path: Path) -> bool:
        if any(self._is_zero_window(path, pos) for pos in range(len(path) - 2)):
            return True
        if self.spec.kind != G2T:
            return False
        return any(self._is_zero_detour(path, pos) for pos in range(len(path) - 4))

    def _moves(self, path: Path) -> Iterator[Path]:
        """Пути, равные данному по одному биномиальному соотношению."""
        for pos in range(len(path) - 2):
            a, b, c = path[pos : pos + 3]
            axis_ab, axis_bc = self._axis(a, b), self._axis(b, c)
            if a == c:
                for other in self._along(a, axis_ab):
                    if other != b:
                        yield path[: pos + 1] + (other,) + path[pos + 2 :]
            elif axis_ab != axis_bc:
                corners = set(self._along(a, axis_bc)) & set(self._along(c, axis_ab))
                for corner in corners:
                    if corner != b:
                        yield path[: pos + 1] + (corner,) + path[pos + 2 :]

    def normalize(self, path: Path) -> Optional[Path]:
        """
        Нормальная форма пути или None, если путь равен нулю.

        Raises:
            ValueError: если путь не проходит по стрелкам
        """
        cached = self._normal.get(path)
        if cached is not None or path in self._normal:
            return cached
        self.check_path(path)
        seen: Set[Path] = {path}
        frontier = [path]
        result: Optional[Path] = path
        while frontier:
            current = frontier.pop()
            if self._has_zero_pattern(current):
                result = None
                break
            for nxt in self._moves(current):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if result is not None:
            result = min(seen)
        for member in seen:
            self._normal[member] = result
        return result

    # --- морфизмы ------------------------------------------------------

    def element(self, path: Path, coeff: int = 1) -> Element:
        normal = self.normalize(path)
        if normal is None or not coeff % self.p:
            return {}
        return {normal: coeff % self.p}

    def compose(self, f: Element, g: Element) -> Element:
        """f o g: сначала g, затем f; пути склеиваются по общей вершине."""
        result: Element = {}
        for gp, gc in g.items():
            for fp, fc in f.items():
                if fp[0] != gp[-1]:
                    continue
                normal = self.normalize(gp + fp[1:])
                if normal is None:
                    continue
                result[normal] = (result.get(normal, 0) + gc * fc) % self.p
        return {k: c for k, c in result.items() if c}

    def word(self, path: Path) -> VariantWord:
        return VariantWord(tuple(path), self.describe(path))

    def morphism(self, element: Element, source: int, target: int) -> VariantMorphism:
        """Элемент с общими концами как морфизм с записью путей."""
        terms = {self.word(path): c for path, c in element.items()}
        built = Morphism.from_dict(self.p, source, target, terms)
        return VariantMorphism(self.p, source, target, built.terms, spec=self.spec)

    def compose_word(self, path: Path) -> VariantMorphism:
        """
        Нормальная форма слова, записанного последовательностью вершин.

        Raises:
            ValueError: если путь пуст или не проходит по стрелкам
        """
        path = tuple(path)
        if not path:
            raise ValueError("empty path")
        return self.morphism(self.element(path), path[0], path[-1])

    @property
    def max_length(self) -> int:
        if self.spec.kind == QUANTUM_GENERIC:
            return 0
        return 4 if self.spec.kind == G2T else 2

    def _paths_from(self, i: int, length: int) -> Iterator[Path]:
        if length == 0:
            yield (i,)
            return
        for tail in self._paths_from(i, length - 1):
            for _, j in self.arrows(tail[-1]):
                yield tail + (j,)

    def hom_basis(self, i: int, j: int) -> List[Path]:
        """Нормальные пути из i в j."""
        cached = self._hom.get((i, j))
        if cached is not None:
            return cached
        found: Set[Path] = set()
        for length in range(self.max_length + 1):
            for path in self._paths_from(i, length):
                if path[-1] != j:
                    continue
                normal = self.normalize(path)
                if normal is not None:
                    found.add(normal)
        result = sorted(found, key=lambda path: (len(path), path))
        self._hom[(i, j)] = result
        return result

    def end_dimension(self, i: int) -> int:
        return len(self.hom_basis(i, i))

    # --- центральные элементы -------------------------------------------

    def row_loop(self, i: int) -> Element:
        """Петля l_i по горизонтали; пусто, если у i нет горизонтальных стрелок."""
        ends = self._along(i, HORIZONTAL)
        if not ends:
            return {}
        return self.element((i, ends[0], i))

    def column_loop(self, i: int) -> Element:
        """Петля l'_i по вертикали (только G2T)."""
        ends = self._along(i, VERTICAL)
        if not ends:
            return {}
        return self.element((i, ends[0], i))

    def column_sum(self, j: int, indices: List[int]) -> Dict[int, Element]:
        """L_{c(j)}: горизонтальные петли по столбцу j среди данных индексов."""
        p = self.spec.base
        return {i: self.row_loop(i) for i in indices if column_of(i, p) == j}

    def vertex_central(self, i: int) -> Element:
        """
        Элемент, отличный от нуля только в e_i: l_i, если у i нет вертикальных
        стрелок, иначе l_i l'_i.
        """
        row = self.row_loop(i)
        column = self.column_loop(i)
        if not column:
            return row
        return self.compose(column, row)


@dataclass
class VariantReport:
    """Результат решателя центра для варианта на окне."""

    kind: str
    base: int
    bound: int
    margin: int
    vertices: int = 0
    unknowns: int = 0
    equations: int = 0
    nullity: int = 0
    expected_nullity: int = 0
    interior_rank: int = 0
    expected_interior_rank: int = 0
    end_dimensions: Dict[int, int] = field(default_factory=dict)

    @property
    def matches_expected(self) -> bool:
        return (
            self.nullity == self.expected_nullity
            and self.interior_rank == self.expected_interior_rank
        )


def expected_center_dimension(spec: VariantSpec, n: int) -> int:
    """Ожидаемая размерность центра на окне из n вершин."""
    if n == 0:
        return 0
    if spec.kind == QUANTUM_GENERIC:
        return n
    if spec.kind == QUANTUM:
        return 1 + (n - 1)
    if spec.kind == G1T:
        return 1 + n
    return 1 + n + (spec.base - 1)


class VariantCenterSolver:
    """
    Система [z, g] = 0 для диагонального z на окне варианта.

    Неизвестные - коэффициенты z_i в базисе нормальных петель e_i; уравнения
    по одной на путь длины 1-5 для каждой стрелки внутри окна.
    """

    def __init__(self, algebra: VariantAlgebra, bound: int, margin: int = 0):
        self.algebra = algebra
        self.spec = algebra.spec
        self.bound = bound
        self.margin = margin
        self.vertices = variant_vertices(self.spec, bound)
        self.indices = [v.index for v in self.vertices]
        self.columns: Dict[Tuple[int, Path], int] = {}
        self.end_dimensions: Dict[int, int] = {}
        for i in self.indices:
            basis = algebra.hom_basis(i, i)
            self.end_dimensions[i] = len(basis)
            for path in basis:
                self.columns[(i, path)] = len(self.columns)
        self.equation_count = 0
        self.null_basis = np.zeros((0, len(self.columns)), dtype=np.int64)
        self.interior_basis = np.zeros((0, 0), dtype=np.int64)

    def interior(self) -> List[int]:
        """Индексы внутренней части окна."""
        limit = self.bound - self.margin
        if limit < 1:
            return []
        if self.spec.kind == G2T:
            return [v.index for v in self.vertices if abs(v.row) <= limit]
        return [v.index for v in self.vertices if abs(v.value) <= limit]

    def _interior_columns(self) -> List[int]:
        inner = set(self.interior())
        return [col for (i, _), col in self.columns.items() if i in inner]

    def equations(self) -> Iterator[Dict[int, int]]:
        algebra = self.algebra
        inside = set(self.indices)
        for i in self.indices:
            for _, j in algebra.arrows(i):
                if j not in inside:
                    continue
                arrow = algebra.element((i, j))
                rows: Dict[Path, Dict[int, int]] = {}
                for path in algebra.hom_basis(j, j):
                    col = self.columns[(j, path)]
                    for x, c in algebra.compose(algebra.element(path), arrow).items():
                        row = rows.setdefault(x, {})
                        row[col] = row.get(col, 0) + c
                for path in algebra.hom_basis(i, i):
                    col = self.columns[(i, path)]
                    for x, c in algebra.compose(arrow, algebra.element(path)).items():
                        row = rows.setdefault(x, {})
                        row[col] = row.get(col, 0) - c
                for x in sorted(rows):
                    self.equation_count += 1
                    yield rows[x]

    def solve(self) -> VariantReport:
        p = self.algebra.p
        ncols = len(self.columns)
        reduced = reduce_stream(self.equations(), ncols, p)
        if ncols:
            self.null_basis = nullspace_basis(reduced, p)
        interior = self._interior_columns()
        projection = self.null_basis[:, interior]
        if projection.size:
            self.interior_basis = row_reduce(projection, p).matrix
        else:
            self.interior_basis = np.zeros((0, len(interior)), dtype=np.int64)
        report = VariantReport(
            kind=self.spec.kind,
            base=self.spec.base,
            bound=self.bound,
            margin=self.margin,
            vertices=len(self.indices),
            unknowns=ncols,
            equations=self.equation_count,
            nullity=ncols - reduced.shape[0],
            expected_nullity=expected_center_dimension(self.spec, len(self.indices)),
            interior_rank=self.interior_basis.shape[0],
            expected_interior_rank=expected_center_dimension(self.spec, len(self.interior())),
            end_dimensions=dict(self.end_dimensions),
        )
        logger.info(
            "variant %s bound=%s: %s vertices, nullity %s (expected %s)",
            self.spec,
            self.bound,
            report.vertices,
            report.nullity,
            report.expected_nullity,
        )
        return report

    def vector(self, support: Dict[int, Element]) -> np.ndarray:
        """Элемент {вершина: петля} как вектор неизвестных; вершины вне окна отбрасываются."""
        vec = np.zeros(len(self.columns), dtype=np.int64)
        for i, element in support.items():
            for path, c in element.items():
                col = self.columns.get((i, path))
                if col is not None:
                    vec[col] = c % self.algebra.p
        return vec

    def interior_contains(self, support: Dict[int, Element]) -> bool:
        """Проекция элемента на внутреннюю часть лежит в проекции решений."""
        interior = self._interior_columns()
        return in_span(self.vector(support)[interior], self.interior_basis, self.algebra.p)


def variant_center(spec: VariantSpec, bound: int, margin: int = 0) -> VariantReport:
    """Решает систему центра варианта на окне и сравнивает с ожидаемым."""
    return VariantCenterSolver(VariantAlgebra(spec), bound, margin).solve()


def variant_compose(spec: VariantSpec, path: Path) -> VariantMorphism:
    """
    Нормальная форма слова варианта.

    Raises:
        ValueError: если соседние вершины не соединены стрелкой
    """
    return VariantAlgebra(spec).compose_word(tuple(path))
