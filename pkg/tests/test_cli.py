"""
Тесты командной строки: вывод, коды выхода, режим весов.
"""

import json

import pytest

from src.tilting_center.adapters.text.word_codec import parse_expression
from src.tilting_center.app.cli import EXIT_OK, EXIT_USAGE, evaluate_terms, main
from src.tilting_center.domain.algebra import ZAlgebra


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestDigitsAndReflections:
    """Команды digits и reflect."""

    def test_digits(self, capsys):
        """Проверяет строку для 17 при p=3."""
        code, out = run(capsys, "digits", "17", "-p", "3")
        assert code == EXIT_OK
        assert out.strip() == "[1,2,2]_3 gen=2 eve=no D={0,1}"

    def test_digits_in_weights(self, capsys):
        code, out = run(capsys, "--weights", "digits", "17", "-p", "3")
        assert code == EXIT_OK
        assert out.startswith("w=16 ")

    def test_reflect_down(self, capsys):
        """Проверяет 17[{1}] = 5 при p=3."""
        code, out = run(capsys, "reflect", "17", "-p", "3", "--down", "-S", "{1}")
        assert code == EXIT_OK
        assert out.strip() == "5"

    def test_reflect_up(self, capsys):
        code, out = run(capsys, "reflect", "5", "-p", "3", "--up", "-S", "{1}")
        assert out.strip() == "17"

    def test_inadmissible_set_is_usage_error(self, capsys):
        """Проверяет код 2, если множество не допустимо."""
        code, out = run(capsys, "reflect", "17", "-p", "3", "--down", "-S", "{2}")
        assert code == EXIT_USAGE
        assert out == ""

    def test_unknown_command(self, capsys):
        code, _ = run(capsys, "frobnicate")
        assert code == EXIT_USAGE

    def test_missing_prime(self, capsys):
        code, _ = run(capsys, "digits", "17")
        assert code == EXIT_USAGE

    def test_admissible(self, capsys):
        """Проверяет соседей 5 при p=3: D{0} в 1, U{0} в 7, U{1} в 17."""
        code, out = run(capsys, "admissible", "5", "-p", "3")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["down"] == {"{0}": 1}
        assert data["up"] == {"{0}": 7, "{1}": 17}
        assert data["hulls"] == {"0": "{0}", "1": None}


class TestQuiverAndHom:
    """Команды quiver, homdim, hombasis."""

    def test_quiver_json(self, capsys):
        code, out = run(capsys, "quiver", "-p", "3", "-e", "1", "-N", "18", "--format", "json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert [v["v"] for v in data["vertices"]] == [1, 5, 7, 11, 13, 17]
        assert (data["p"], data["eve"], data["bound"]) == (3, 1, 18)
        assert {"from": 13, "to": 17, "stretch": "{0}"} in data["edges"]
        assert len(data["edges"]) == 7

    def test_quiver_dot(self, capsys):
        code, out = run(capsys, "quiver", "-p", "3", "-e", "1", "-N", "18")
        assert code == EXIT_OK
        assert "w12 -- w16" in out
        assert 'w12 [label="12|2|[1,1,1]_3"]' in out

    def test_quiver_rejects_non_eve(self, capsys):
        code, _ = run(capsys, "quiver", "-p", "3", "-e", "5", "-N", "18")
        assert code == EXIT_USAGE

    def test_homdim(self, capsys):
        """Проверяет dim End(e_12) = 4 при p=3."""
        code, out = run(capsys, "homdim", "13", "13", "-p", "3")
        assert out.strip() == "4"

    def test_hombasis(self, capsys):
        code, out = run(capsys, "hombasis", "13", "13", "-p", "3")
        lines = out.strip().splitlines()
        assert len(lines) == 4
        assert "e[13]" in lines

    def test_hombasis_in_weights(self, capsys):
        code, out = run(capsys, "--weights", "hombasis", "13", "13", "-p", "3")
        assert "e[12]" in out.strip().splitlines()


class TestNormalize:
    """Команда normalize и вычисление выражений."""

    def test_worked_identity(self, capsys):
        """Проверяет D{0} U{1} D{1} e_12 = U{1,0} D{1} e_12."""
        code, out = run(capsys, "normalize", "-p", "3", "--word", "e[11] D{0} U{1} D{1} e[13]")
        assert code == EXIT_OK
        assert out.strip() == "e[11] U{1,0} D{1} e[13]"

    def test_zigzag_vanishes(self, capsys):
        code, out = run(capsys, "normalize", "-p", "3", "--word", "e[11] D{0} U{0} D{0} e[13]")
        assert out.strip() == "0"

    def test_json_output(self, capsys):
        code, out = run(
            capsys, "normalize", "-p", "3", "--word", "D{0} U{1} D{1} e[13]", "--json"
        )
        data = json.loads(out)
        assert data["target"] == 11

    def test_wrong_target(self, capsys):
        """Проверяет код 2, если e[w] слева не совпадает с концом пути."""
        code, _ = run(capsys, "normalize", "-p", "3", "--word", "e[7] D{0} e[13]")
        assert code == EXIT_USAGE

    def test_ill_formed_word(self, capsys):
        code, _ = run(capsys, "normalize", "-p", "3", "--word", "e[13] X e[13]")
        assert code == EXIT_USAGE

    def test_sum_of_terms(self):
        """Проверяет, что e + 2 e в F_3 дает ноль."""
        z3 = ZAlgebra(3)
        result = evaluate_terms(z3, parse_expression("e[13] + 2*e[13]"))
        assert result.is_zero
        assert (result.source, result.target) == (13, 13)

    def test_generalized_letter(self):
        """Проверяет, что буква D{1,0} раскладывается на минимальные отрезки."""
        z3 = ZAlgebra(3)
        result = evaluate_terms(z3, parse_expression("D{1,0} e[13]"))
        assert result.target == 5


class TestVerification:
    """Команды center и variant."""

    def test_center_block_one(self, capsys):
        code, out = run(capsys, "center", "-p", "3", "-e", "1", "-N", "81", "-M", "27")
        assert code == EXIT_OK
        summary = out.strip().splitlines()[-1]
        assert summary.startswith("center p=3 e=1 N=81 M=27")
        assert summary.endswith("OK")

    def test_center_rejects_bad_margin(self, capsys):
        code, _ = run(capsys, "center", "-p", "3", "-e", "1", "-N", "18", "-M", "18")
        assert code == EXIT_USAGE

    @pytest.mark.parametrize(
        "argv",
        [
            ["variant", "quantum", "--base", "5", "-N", "21"],
            ["variant", "g1t", "--base", "3", "-N", "10"],
            ["variant", "g2t", "--base", "3", "-N", "1"],
        ],
    )
    def test_variant(self, capsys, argv):
        code, out = run(capsys, *argv)
        assert code == EXIT_OK
        assert out.strip().splitlines()[-1].endswith("OK")

    def test_variant_path(self, capsys):
        code, out = run(capsys, "variant", "g2t", "--base", "5", "-N", "1", "--path", "1,9,8")
        data = json.loads(out)
        assert data["terms"][0]["path"] == [1, 2, 8]
        assert (data["variant"], data["source"], data["target"]) == ("g2t", 1, 8)

    def test_variant_rejects_small_prime(self, capsys):
        code, _ = run(capsys, "variant", "g2t", "--base", "2", "-N", "1")
        assert code == EXIT_USAGE


class TestDonkin:
    def test_pruned(self, capsys):
        """Проверяет факторизацию T(16) при p=3."""
        code, out = run(capsys, "donkin", "17", "-p", "3")
        assert out.strip() == "T(0)^(2) (x) T(4)^(1) (x) T(4)^(0)"

    def test_rejects_zero(self, capsys):
        code, _ = run(capsys, "donkin", "0", "-p", "3")
        assert code == EXIT_USAGE
