"""
Экспорт колчана в DOT через graphviz.
"""

from typing import List

import graphviz
import networkx as nx

from ...domain.admissible import format_set
from ...domain.variants import GridVertex, VariantAlgebra
from ...ports.exporter import QuiverExporter


def _name(v: int) -> str:
    return f"w{v - 1}"


class DotQuiverExporter(QuiverExporter):
    """
    Реализация QuiverExporter для Graphviz: одно ребро на пару D_S/U_S.

    Узел вершины v называется w<v-1>, подпись - вес|поколение|цифры.
    """

    def export(self, graph: nx.Graph) -> str:
        dot = graphviz.Graph(name=f"quiver_p{graph.graph['p']}", strict=True)
        for v in sorted(graph.nodes):
            attrs = graph.nodes[v]
            label = f"{attrs['weight']}|{attrs['generation']}|{attrs['digits']}"
            dot.node(_name(v), label=label)
        for low, high in sorted(tuple(sorted(edge)) for edge in graph.edges):
            stretch = graph.edges[low, high]["stretch"]
            dot.edge(_name(low), _name(high), label=format_set(stretch))
        return dot.source


class DotVariantExporter:
    """DOT для окна варианта: узлы по индексам i, подпись - значение v_i."""

    def export(self, algebra: VariantAlgebra, vertices: List[GridVertex]) -> str:
        dot = graphviz.Graph(name=f"variant_{algebra.spec.kind}", strict=True)
        inside = {v.index for v in vertices}
        for v in vertices:
            dot.node(str(v.index), label=f"{v.index}\\n{v.value}")
        for v in vertices:
            for axis, j in algebra.arrows(v.index):
                if j in inside and v.index < j:
                    dot.edge(str(v.index), str(j), label="{" + str(axis) + "}")
        return dot.source
