"""
Колчан алгебры Z: образующие, блоки, классы C_v.

Граф строится через networkx: вершины - целые v >= 1, ребро v -- v[S]
для каждого минимального отрезка вниз S.
"""

import logging
from collections import deque
from functools import lru_cache
from typing import FrozenSet, Iterable, List

import networkx as nx

from .admissible import AdmissibleSet, flip_down, flip_up, min_down_spans, min_up_spans
from .models import DOWN, UP, Block, Generator
from .padic import digit_set, digits, expand, format_digits, generation, is_eve

logger = logging.getLogger(__name__)


def neighbors(v: int, p: int) -> List[Generator]:
    """
    Все образующие с началом в v: сначала Down, затем Up, отрезки по возрастанию.

    Args:
        v: Вершина v >= 1
        p: Простое

    Returns:
        List[Generator]: стрелки из v
    """
    result = []
    for lo, hi in min_down_spans(v, p):
        result.append(Generator(DOWN, AdmissibleSet.span(lo, hi), v, flip_down(v, lo, hi, p)))
    for lo, hi in min_up_spans(v, p):
        result.append(Generator(UP, AdmissibleSet.span(lo, hi), v, flip_up(v, lo, hi, p)))
    return result


def generators_between(v: int, w: int, p: int) -> List[Generator]:
    """Образующие из v в w."""
    return [g for g in neighbors(v, p) if g.target == w]


@lru_cache(maxsize=32)
def _down_graph(limit: int, p: int) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(1, limit + 1))
    for v in range(1, limit + 1):
        for lo, hi in min_down_spans(v, p):
            graph.add_edge(v, flip_down(v, lo, hi, p), stretch=(lo, hi))
    return graph


def block(e: int, p: int, bound: int) -> Block:
    """
    Блок eve e: компонента связности, вершины <= bound.

    Обход идет по вершинам до 2*bound.

    Raises:
        ValueError: если e не eve
    """
    if not is_eve(e, p):
        raise ValueError(f"{e} is not an eve for p={p}")
    graph = _down_graph(2 * max(bound, e), p)
    component = nx.node_connected_component(graph, e)
    members = sorted(v for v in component if v <= bound)
    logger.debug("block e=%s p=%s bound=%s: %s members", e, p, bound, len(members))
    return Block(eve=e, p=p, bound=bound, members=members)


def blocks(p: int, bound: int) -> List[Block]:
    """Разбиение [1, bound] на блоки по eve <= bound."""
    graph = _down_graph(2 * bound, p)
    result = []
    for component in nx.connected_components(graph):
        members = sorted(v for v in component if v <= bound)
        if not members:
            continue
        eves = [v for v in members if is_eve(v, p)]
        result.append(Block(eve=eves[0], p=p, bound=bound, members=members))
    return sorted(result, key=lambda b: b.eve)


def equiv_class(v: int, S: Iterable[int], p: int, bound: int) -> List[int]:
    """
    Класс v по отношению ~_S среди вершин <= bound.

    Шаги: стрелки D_T и U_T, у которых отрезок T не пересекает S;
    каждая посещенная вершина u обязана иметь S в D_u. Обход идет до p*bound.

    Raises:
        ValueError: если S не лежит в D_v
    """
    fixed: FrozenSet[int] = frozenset(S)
    if not fixed <= digit_set(v, p):
        raise ValueError(f"{sorted(fixed)} is not contained in D_{v} (p={p})")
    limit = p * max(bound, v)
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for g in neighbors(u, p):
            w = g.target
            if w in seen or w > limit or fixed & g.stretch.elements:
                continue
            if not fixed <= digit_set(w, p):
                continue
            seen.add(w)
            queue.append(w)
    return sorted(w for w in seen if w <= bound)


def quiver_graph(members: Iterable[int], p: int) -> nx.Graph:
    """
    Неориентированный граф колчана на заданных вершинах.

    Узлы несут вес v-1, поколение и цифры; ребро - пару Down/Up с отрезком.
    """
    vertices = sorted(set(members))
    allowed = set(vertices)
    graph = nx.Graph(p=p)
    for v in vertices:
        graph.add_node(
            v,
            weight=v - 1,
            generation=generation(v, p),
            digits=format_digits(expand(v, p)),
        )
    for v in vertices:
        for lo, hi in min_down_spans(v, p):
            w = flip_down(v, lo, hi, p)
            if w in allowed:
                graph.add_edge(w, v, stretch=AdmissibleSet.span(lo, hi))
    return graph


def block_quiver(eve: int, p: int, bound: int) -> nx.Graph:
    """
    Колчан блока eve на вершинах <= bound; граф помнит p, eve и bound.

    Raises:
        ValueError: если eve не является eve
    """
    graph = quiver_graph(block(eve, p, bound).members, p)
    graph.graph.update(eve=eve, bound=bound)
    return graph


def restrict_to(graph: nx.Graph, vertices: Iterable[int]) -> nx.Graph:
    """Идемпотентное усечение: подграф на выбранных вершинах."""
    return graph.subgraph(sorted(set(vertices))).copy()


def zero_digit_check(blk: Block) -> List[int]:
    """
    Вершины блока с eve < p, у которых 0 не входит в D_v.

    Returns:
        List[int]: нарушители (пустой список, если все в порядке)
    """
    if blk.eve >= blk.p:
        return []
    return [
        v
        for v in blk.members
        if v != blk.eve and 0 not in digit_set(v, blk.p)
    ]


def lowest_digits_agree(v: int, w: int, p: int) -> bool:
    """Совпадение цифр b_i = a_i для 0 <= i < j, где j - старший индекс v."""
    dv, dw = digits(v, p), digits(w, p)
    j = len(dv) - 1
    return all((dw[i] if i < len(dw) else 0) == dv[i] for i in range(j))
