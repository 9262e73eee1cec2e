"""
JSON-схемы колчана, морфизмов и отчетов.

Все документы сериализуются с сортировкой ключей и отступом 2, поэтому
вывод совпадает байт в байт при одинаковых входных данных.
"""

import json
from dataclasses import asdict, is_dataclass
from typing import Any, Dict, List, Optional

import networkx as nx

from ...domain.admissible import format_set
from ...domain.models import BasisWord, Morphism, format_word
from ...domain.variants import KINDS, GridVertex, VariantAlgebra, VariantMorphism, VariantSpec
from ...ports.exporter import QuiverExporter

# признак алгебры в документах: основная Z или один из вариантов
Z_ALGEBRA = "z"

# вычисляемые флаги отчетов, которые asdict не видит
_FLAGS = ("verified", "matches_expected", "holds", "commutes")


def dumps(document: Any) -> str:
    """Стабильная сериализация: сортировка ключей, отступ 2."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)


class JsonQuiverExporter(QuiverExporter):
    """Реализация QuiverExporter для JSON."""

    def export(self, graph: nx.Graph) -> str:
        return dumps(quiver_to_json(graph))


def quiver_to_json(graph: nx.Graph) -> Dict[str, Any]:
    """
    Колчан как {p, eve, bound, vertices, edges}; ребро идет от меньшей вершины к большей.

    eve и bound равны None, если граф построен не через block_quiver.
    """
    vertices = []
    for v in sorted(graph.nodes):
        attrs = graph.nodes[v]
        vertices.append(
            {
                "v": v,
                "weight": attrs["weight"],
                "generation": attrs["generation"],
                "digits": attrs["digits"],
            }
        )
    edges = []
    for low, high in sorted(tuple(sorted(edge)) for edge in graph.edges):
        edges.append(
            {
                "from": low,
                "to": high,
                "stretch": format_set(graph.edges[low, high]["stretch"]),
            }
        )
    return {
        "variant": Z_ALGEBRA,
        "p": graph.graph.get("p"),
        "eve": graph.graph.get("eve"),
        "bound": graph.graph.get("bound"),
        "vertices": vertices,
        "edges": edges,
    }


def variant_window_to_json(algebra: VariantAlgebra, vertices: List[GridVertex]) -> Dict[str, Any]:
    """Окно варианта с вершинами (индекс, значение, позиция) и стрелками внутри окна."""
    inside = {v.index for v in vertices}
    edges = []
    for v in vertices:
        for axis, j in algebra.arrows(v.index):
            if j in inside and v.index < j:
                edges.append({"low": v.index, "high": j, "axis": axis})
    return {
        "variant": algebra.spec.kind,
        "base": algebra.spec.base,
        "vertices": [asdict(v) for v in vertices],
        "edges": edges,
    }


# --- морфизмы ----------------------------------------------------------


def morphism_to_json(m: Morphism) -> Dict[str, Any]:
    """
    Морфизм как список слов с коэффициентами.

    Для Z отрезки слов - пары [lo, hi]; для вариантов слово - путь по индексам.
    """
    if isinstance(m, VariantMorphism):
        return _variant_morphism_to_json(m)
    return {
        "variant": Z_ALGEBRA,
        "p": m.p,
        "source": m.source,
        "target": m.target,
        "terms": [
            {
                "coeff": coeff,
                "downs": [list(span) for span in word.downs],
                "ups": [list(span) for span in word.ups],
                "text": format_word(word),
            }
            for word, coeff in m.terms
        ],
    }


def morphism_from_json(data: Dict[str, Any]) -> Morphism:
    """
    Обратное к morphism_to_json; поле text игнорируется.

    Raises:
        ValueError: если документ не описывает морфизм Z или варианта
    """
    variant = data.get("variant", Z_ALGEBRA)
    if variant in KINDS:
        return _variant_morphism_from_json(data)
    if variant != Z_ALGEBRA:
        raise ValueError(f"unknown algebra in morphism document: {variant!r}")
    try:
        p, source, target = int(data["p"]), int(data["source"]), int(data["target"])
        terms = {}
        for term in data["terms"]:
            word = BasisWord(
                source,
                target,
                tuple((int(lo), int(hi)) for lo, hi in term["downs"]),
                tuple((int(lo), int(hi)) for lo, hi in term["ups"]),
            )
            terms[word] = terms.get(word, 0) + int(term["coeff"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed morphism document: {exc}") from None
    return Morphism.from_dict(p, source, target, terms)


def _variant_morphism_to_json(m: VariantMorphism) -> Dict[str, Any]:
    return {
        "variant": m.spec.kind,
        "base": m.spec.base,
        "p": m.p,
        "source": m.source,
        "target": m.target,
        "terms": [
            {"coeff": coeff, "path": list(word.path), "text": str(word)}
            for word, coeff in m.terms
        ],
    }


def _variant_morphism_from_json(data: Dict[str, Any]) -> VariantMorphism:
    try:
        algebra = VariantAlgebra(VariantSpec(data["variant"], int(data["base"])))
        source, target = int(data["source"]), int(data["target"])
        terms = {}
        for term in data["terms"]:
            path = tuple(int(i) for i in term["path"])
            for normal, c in algebra.element(path, int(term["coeff"])).items():
                terms[normal] = terms.get(normal, 0) + c
        return algebra.morphism(terms, source, target)
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed variant morphism document: {exc}") from None


# --- отчеты ------------------------------------------------------------


def report_to_json(report: Any, variant: Optional[str] = None) -> Dict[str, Any]:
    """
    Отчет-датакласс как словарь с вычисляемыми флагами.

    Морфизмы внутри отчета заменяются их текстовой записью.
    """
    if not is_dataclass(report):
        raise TypeError(f"expected a dataclass report, got {type(report).__name__}")
    document = {}
    for name in report.__dataclass_fields__:
        document[name] = _plain(getattr(report, name))
    for flag in _FLAGS:
        if hasattr(type(report), flag):
            document[flag] = getattr(report, flag)
    if variant is None:
        kind = document.get("kind")
        variant = kind if kind in KINDS else Z_ALGEBRA
    document["variant"] = variant
    return document


def _plain(value: Any) -> Any:
    if isinstance(value, Morphism):
        return str(value)
    if is_dataclass(value):
        return {k: _plain(getattr(value, k)) for k in value.__dataclass_fields__}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
