"""
Интерфейс экспорта колчана.
"""

from abc import ABC, abstractmethod

import networkx as nx


class QuiverExporter(ABC):
    """Абстрактный интерфейс для вывода графа колчана в текстовый формат."""

    @abstractmethod
    def export(self, graph: nx.Graph) -> str:
        """
        Сериализует граф колчана.

        Args:
            graph: Граф из quiver_graph или block_quiver (узлы - вершины v,
                атрибуты графа p, eve, bound)

        Returns:
            str: Текст документа
        """
        pass
