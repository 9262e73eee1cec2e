"""
Тесты экспорта колчана и документов в DOT и JSON.
"""

import json

import pytest

from src.tilting_center.adapters.dot.exporter import DotQuiverExporter, DotVariantExporter
from src.tilting_center.adapters.json_export.exporter import (
    JsonQuiverExporter,
    dumps,
    morphism_from_json,
    morphism_to_json,
    quiver_to_json,
    report_to_json,
    variant_window_to_json,
)
from src.tilting_center.domain.admissible import AdmissibleSet
from src.tilting_center.domain.algebra import ZAlgebra
from src.tilting_center.domain.center import casimir_check
from src.tilting_center.domain.quiver import block, block_quiver, quiver_graph
from src.tilting_center.domain.variants import (
    G1T,
    G2T,
    VariantAlgebra,
    VariantSpec,
    variant_center,
    variant_vertices,
)

BLOCK_ONE_EDGES = [
    [1, 5, "{0}"],
    [5, 7, "{0}"],
    [5, 17, "{1}"],
    [7, 11, "{1,0}"],
    [7, 13, "{1}"],
    [11, 13, "{0}"],
    [13, 17, "{0}"],
]


@pytest.fixture(scope="module")
def graph():
    return block_quiver(1, 3, 18)


class TestDot:
    """Экспорт в Graphviz."""

    def test_edges_present(self, graph):
        """Проверяет, что каждое ребро блока попадает в DOT с подписью отрезка."""
        source = DotQuiverExporter().export(graph)
        assert source.startswith("strict graph quiver_p3")
        assert "w6 -- w10" in source
        assert "w4 -- w16" in source
        assert source.count(" -- ") == len(BLOCK_ONE_EDGES)

    def test_node_names_and_labels(self, graph):
        """Проверяет узлы w<вес> с подписью вес|поколение|цифры."""
        source = DotQuiverExporter().export(graph)
        assert 'w16 [label="16|2|[1,2,2]_3"]' in source
        assert 'w0 [label="0|0|[1]_3"]' in source
        assert "w17" not in source

    def test_plain_vertex_set(self):
        """Проверяет экспорт графа, построенного не по блоку."""
        source = DotQuiverExporter().export(quiver_graph([13, 17], 3))
        assert "w12 -- w16" in source

    def test_variant_window(self):
        algebra = VariantAlgebra(VariantSpec(G2T, 3))
        source = DotVariantExporter().export(algebra, variant_vertices(algebra.spec, 1))
        assert source.startswith("strict graph variant_g2t")
        assert "0 -- 1" in source
        assert "1 -- 5" in source


class TestJsonQuiver:
    """Документ колчана."""

    def test_edges(self, graph):
        data = quiver_to_json(graph)
        edges = [[e["from"], e["to"], e["stretch"]] for e in data["edges"]]
        assert edges == BLOCK_ONE_EDGES
        assert data["variant"] == "z"
        assert [v["v"] for v in data["vertices"]] == [1, 5, 7, 11, 13, 17]

    def test_schema(self, graph):
        """Проверяет ключи документа: p, eve, bound, вершины {v, weight, generation, digits}."""
        data = quiver_to_json(graph)
        assert {"p", "eve", "bound", "vertices", "edges"} <= set(data)
        assert (data["p"], data["eve"], data["bound"]) == (3, 1, 18)
        for vertex in data["vertices"]:
            assert {"v", "weight", "generation", "digits"} <= set(vertex)
            assert vertex["weight"] == vertex["v"] - 1
        for edge in data["edges"]:
            assert {"from", "to", "stretch"} <= set(edge)
            assert edge["from"] < edge["to"]

    def test_vertex_attributes(self, graph):
        data = quiver_to_json(graph)
        seventeen = data["vertices"][-1]
        assert seventeen == {"v": 17, "weight": 16, "generation": 2, "digits": "[1,2,2]_3"}

    def test_plain_graph_has_no_block(self):
        """Проверяет eve = bound = None для графа на произвольных вершинах."""
        data = quiver_to_json(quiver_graph(block(1, 3, 18).members, 3))
        assert data["p"] == 3
        assert data["eve"] is None and data["bound"] is None

    def test_exporter_is_stable(self, graph):
        """Проверяет побайтовое совпадение повторного экспорта."""
        exporter = JsonQuiverExporter()
        assert exporter.export(graph) == exporter.export(graph)
        assert json.loads(exporter.export(graph))["vertices"][0]["weight"] == 0

    def test_variant_window(self):
        algebra = VariantAlgebra(VariantSpec(G2T, 3))
        data = variant_window_to_json(algebra, variant_vertices(algebra.spec, 1))
        assert data["variant"] == G2T
        assert len(data["vertices"]) == 9
        assert {"low": 0, "high": 1, "axis": 0} in data["edges"]


class TestJsonMorphism:
    """Документы морфизмов."""

    def test_obstruction_word(self):
        z3 = ZAlgebra(3)
        down = z3.generalized_down(AdmissibleSet.of([0]), 13)
        m = z3.compose(down, z3.loop(AdmissibleSet.of([1]), 13))
        data = morphism_to_json(m)
        assert data["source"] == 13 and data["target"] == 11
        assert data["terms"][0]["text"] == "e[11] U{1,0} D{1} e[13]"
        assert morphism_from_json(data) == m

    def test_rejects_incomplete_variant_document(self):
        """Проверяет отказ для документа варианта без основания и концов."""
        with pytest.raises(ValueError):
            morphism_from_json({"variant": G2T, "terms": []})

    def test_rejects_unknown_algebra(self):
        with pytest.raises(ValueError):
            morphism_from_json({"variant": "sl3", "terms": []})

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            morphism_from_json({"p": 3, "source": 13})

    def test_variant_morphism(self):
        """Проверяет документ морфизма варианта и обратное чтение."""
        algebra = VariantAlgebra(VariantSpec(G2T, 3))
        m = algebra.compose_word((0, 1, 0))
        data = morphism_to_json(m)
        assert data["variant"] == G2T
        assert data["base"] == 3
        assert (data["source"], data["target"]) == (0, 0)
        assert data["terms"][0]["path"] == [0, 1, 0]
        assert data["terms"][0]["text"] == algebra.describe((0, 1, 0))
        assert morphism_from_json(data) == m

    def test_variant_zero_morphism(self):
        """Проверяет, что нулевой путь дает документ без слагаемых."""
        algebra = VariantAlgebra(VariantSpec(G1T, 3))
        data = morphism_to_json(algebra.compose_word((0, 1, 2)))
        assert data["terms"] == []
        assert (data["source"], data["target"]) == (0, 2)


class TestReports:
    """Отчеты с вычисляемыми флагами."""

    def test_casimir_report(self):
        data = report_to_json(casimir_check(1, 3, 81))
        assert data["verified"] is True
        assert data["variant"] == "z"
        assert data["violations"] == []

    def test_variant_report(self):
        data = report_to_json(variant_center(VariantSpec(G2T, 3), 1))
        assert data["variant"] == G2T
        assert data["matches_expected"] is True
        assert data["end_dimensions"]["1"] == 4

    def test_rejects_plain_objects(self):
        with pytest.raises(TypeError):
            report_to_json({"verified": True})

    def test_dumps_sorts_keys(self):
        assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')
