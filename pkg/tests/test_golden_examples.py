"""
Golden set тесты для разобранных вручную примеров.

Фикстуры лежат в tests/fixtures/worked_examples/: цифры вершин, отражения,
нормальные формы слов и DOT колчана блока e=1 при p=3.
"""

import json
from pathlib import Path

from src.tilting_center.adapters.dot.exporter import DotQuiverExporter
from src.tilting_center.adapters.text.word_codec import parse_expression
from src.tilting_center.app.cli import evaluate_terms
from src.tilting_center.domain.admissible import parse_set, reflect_down, reflect_up
from src.tilting_center.domain.algebra import ZAlgebra
from src.tilting_center.domain.padic import (
    digit_set,
    expand,
    format_digit_set,
    format_digits,
    generation,
    is_eve,
)
from src.tilting_center.domain.quiver import block_quiver

FIXTURES_DIR = Path(__file__).parent / "fixtures" / "worked_examples"


def load_fixture(name: str) -> list[dict]:
    """Загружает JSON-фикстуру из tests/fixtures/worked_examples/."""
    with open(FIXTURES_DIR / name, "r", encoding="utf-8") as f:
        return json.load(f)


class TestGoldenDigits:
    """Строки разложений совпадают с фикстурами."""

    def test_all_digit_lines(self):
        failures = []
        for case in load_fixture("digits.json"):
            v, p = case["v"], case["p"]
            line = (
                f"{format_digits(expand(v, p))} gen={generation(v, p)} "
                f"eve={'yes' if is_eve(v, p) else 'no'} D={format_digit_set(digit_set(v, p))}"
            )
            if line != case["line"]:
                failures.append(f"{v} (p={p}): {line} != {case['line']}")
        assert not failures, "\n".join(failures)


class TestGoldenReflections:
    """Отражения вниз и вверх."""

    def test_all_reflections(self):
        failures = []
        for case in load_fixture("reflections.json"):
            S = parse_set(case["set"])
            reflect = reflect_down if case["direction"] == "down" else reflect_up
            target = reflect(case["v"], S, case["p"])
            if target != case["target"]:
                failures.append(f"{case['v']} {case['direction']} {case['set']}: {target}")
        assert not failures, "\n".join(failures)


class TestGoldenNormalizations:
    """Нормальные формы выражений."""

    def test_all_normal_forms(self):
        failures = []
        engines = {}
        for case in load_fixture("normalizations.json"):
            p = case["p"]
            engine = engines.setdefault(p, ZAlgebra(p))
            result = str(evaluate_terms(engine, parse_expression(case["word"])))
            if result != case["normal"]:
                failures.append(f"{case['word']}: {result} != {case['normal']}")
        assert not failures, "\n".join(failures)


class TestGoldenQuiver:
    """DOT колчана блока совпадает с эталоном построчно."""

    def test_block_one_dot(self):
        """Проверяет имена узлов w<вес>, подписи вес|поколение|цифры и ребра блока e=1, N=18."""
        source = DotQuiverExporter().export(block_quiver(1, 3, 18))
        expected = (FIXTURES_DIR / "quiver_block_one_p3.dot").read_text(encoding="utf-8")
        actual_lines = [line.strip() for line in source.strip().splitlines()]
        expected_lines = [line.strip() for line in expected.strip().splitlines()]
        assert actual_lines == expected_lines
