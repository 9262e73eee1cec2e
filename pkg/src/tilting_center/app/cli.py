"""
Командная строка: цифры, отражения, колчан, Hom, нормальные формы, центр, варианты.

Коды выхода: 0 - успех, 1 - проверка не прошла, 2 - ошибка ввода.
"""

import argparse
import logging
import re
import sys
from typing import List, Optional

from .. import config
from ..adapters.dot.exporter import DotQuiverExporter, DotVariantExporter
from ..adapters.json_export.exporter import (
    JsonQuiverExporter,
    dumps,
    morphism_to_json,
    variant_window_to_json,
)
from ..adapters.text.word_codec import parse_expression
from ..domain.admissible import (
    AdmissibleSet,
    down_hull,
    format_set,
    parse_set,
    reflect_down,
    reflect_up,
)
from ..domain.algebra import STRATEGIES, ZAlgebra
from ..domain.donkin import donkin_class_split, donkin_factorize, donkin_split
from ..domain.models import DOWN, Morphism, WordTerm, format_word
from ..domain.padic import (
    digit_set,
    expand,
    format_digit_set,
    format_digits,
    generation,
    is_eve,
    leading_index,
)
from ..domain.quiver import block_quiver, neighbors
from ..domain.variants import KINDS, VariantAlgebra, VariantSpec, variant_vertices
from .center_service import CenterService
from .variant_service import VariantService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_IDEMPOTENT_RE = re.compile(r"e\[(-?\d+)\]")


def _show(v: int, weights: bool) -> int:
    return v - 1 if weights else v


def _shift_text(text: str, weights: bool) -> str:
    """Переводит e[v] в e[v-1] при выводе весов."""
    if not weights:
        return text
    return _IDEMPOTENT_RE.sub(lambda m: f"e[{int(m.group(1)) - 1}]", text)


def evaluate_terms(engine: ZAlgebra, terms: List[WordTerm]) -> Morphism:
    """
    Вычисляет сумму слагаемых в нормальной форме.

    Буквы с объединениями отрезков раскладываются в обобщенные D_S и U_S.

    Raises:
        ValueError: если буква недопустима, концы не совпадают с e[w] или слагаемые не параллельны
    """
    result: Optional[Morphism] = None
    for term in terms:
        m = engine.identity(term.source).scale(term.coeff)
        for kind, S in term.letters:
            v = m.target
            step = engine.generalized_down(S, v) if kind == DOWN else engine.generalized_up(S, v)
            m = engine.compose(step, m)
        if term.target is not None and term.target != m.target:
            raise ValueError(f"word ends at e[{m.target}], not e[{term.target}]")
        result = m if result is None else result + m
    if result is None:
        raise ValueError("empty expression")
    return result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilting-center",
        description="Алгебра Z наклоняющих модулей SL2 и ее центр",
    )
    parser.add_argument(
        "--weights",
        action="store_true",
        default=config.DISPLAY_WEIGHTS,
        help="Печатать веса v-1 вместо вершин v",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("digits", help="p-адические цифры вершины")
    cmd.add_argument("v", type=int)
    cmd.add_argument("-p", type=int, required=True)

    cmd = sub.add_parser("admissible", help="Минимальные отрезки и соседи вершины")
    cmd.add_argument("v", type=int)
    cmd.add_argument("-p", type=int, required=True)

    cmd = sub.add_parser("reflect", help="Отражение v[S] или v(S)")
    cmd.add_argument("v", type=int)
    cmd.add_argument("-p", type=int, required=True)
    direction = cmd.add_mutually_exclusive_group(required=True)
    direction.add_argument("--down", action="store_true")
    direction.add_argument("--up", action="store_true")
    cmd.add_argument("-S", dest="stretch", required=True, help="Множество вида {0,1|3}")

    cmd = sub.add_parser("quiver", help="Колчан блока")
    cmd.add_argument("-p", type=int, required=True)
    cmd.add_argument("-e", dest="eve", type=int, required=True)
    cmd.add_argument("-N", dest="bound", type=int, required=True)
    cmd.add_argument("--format", choices=("dot", "json"), default="dot")

    for name, text in (("homdim", "Размерность Hom"), ("hombasis", "Базис Hom")):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("v", type=int)
        cmd.add_argument("w", type=int)
        cmd.add_argument("-p", type=int, required=True)

    cmd = sub.add_parser("normalize", help="Нормальная форма выражения")
    cmd.add_argument("-p", type=int, required=True)
    cmd.add_argument("--word", required=True)
    cmd.add_argument("--strategy", choices=STRATEGIES, default="leftmost")
    cmd.add_argument("--json", action="store_true", help="Вывести морфизм в JSON")

    cmd = sub.add_parser("center", help="Проверка центральных элементов блока")
    cmd.add_argument("-p", type=int, required=True)
    cmd.add_argument("-e", dest="eve", type=int, required=True)
    cmd.add_argument("-N", dest="bound", type=int, required=True)
    cmd.add_argument("-M", dest="margin", type=int, default=0)
    cmd.add_argument("--solver", action="store_true")

    cmd = sub.add_parser("variant", help="Квантовый и G1T/G2T варианты")
    cmd.add_argument("kind", choices=KINDS)
    cmd.add_argument("--base", type=int, default=0, help="k для квантового, p для G1T/G2T")
    cmd.add_argument("-N", dest="bound", type=int, required=True)
    cmd.add_argument("-M", dest="margin", type=int, default=0)
    cmd.add_argument("--path", help="Путь по индексам через запятую: 0,1,9")
    cmd.add_argument("--export", choices=("dot", "json"), help="Вывести окно колчана")

    cmd = sub.add_parser("donkin", help="Тензорная факторизация T(v-1)")
    cmd.add_argument("v", type=int)
    cmd.add_argument("-p", type=int, required=True)
    cmd.add_argument("--pruned", action="store_true", help="Без T(0) и T(p-1)")
    cmd.add_argument("--split", action="store_true", help="Отделить минимальный множитель")
    cmd.add_argument("--class-of", dest="class_of", type=int, help="Вершина того же класса")
    return parser


def _run_digits(args: argparse.Namespace) -> int:
    line = (
        f"{format_digits(expand(args.v, args.p))} gen={generation(args.v, args.p)} "
        f"eve={'yes' if is_eve(args.v, args.p) else 'no'} "
        f"D={format_digit_set(digit_set(args.v, args.p))}"
    )
    if args.weights:
        line = f"w={_show(args.v, True)} {line}"
    print(line)
    return EXIT_OK


def _run_admissible(args: argparse.Namespace) -> int:
    v, p, weights = args.v, args.p, args.weights
    document = {
        "vertex": _show(v, weights),
        "down": {},
        "up": {},
        "hulls": {},
    }
    for g in neighbors(v, p):
        side = "down" if g.kind == DOWN else "up"
        document[side][format_set(g.stretch)] = _show(g.target, weights)
    for i in range(leading_index(v, p) + 1):
        hull = down_hull(AdmissibleSet.of([i]), v, p)
        document["hulls"][str(i)] = format_set(hull) if hull is not None else None
    print(dumps(document))
    return EXIT_OK


def _run_reflect(args: argparse.Namespace) -> int:
    S = parse_set(args.stretch)
    target = reflect_down(args.v, S, args.p) if args.down else reflect_up(args.v, S, args.p)
    print(_show(target, args.weights))
    return EXIT_OK


def _run_quiver(args: argparse.Namespace) -> int:
    graph = block_quiver(args.eve, args.p, args.bound)
    exporter = DotQuiverExporter() if args.format == "dot" else JsonQuiverExporter()
    print(exporter.export(graph))
    logger.info(f"Блок e={args.eve} p={args.p} N={args.bound}: {graph.number_of_nodes()} вершин")
    return EXIT_OK


def _run_hom(args: argparse.Namespace) -> int:
    engine = ZAlgebra(args.p)
    if args.command == "homdim":
        print(engine.hom_dim(args.v, args.w))
        return EXIT_OK
    for word in engine.hom_basis(args.v, args.w):
        print(_shift_text(format_word(word), args.weights))
    return EXIT_OK


def _run_normalize(args: argparse.Namespace) -> int:
    engine = ZAlgebra(args.p, strategy=args.strategy)
    result = evaluate_terms(engine, parse_expression(args.word))
    if args.json:
        print(dumps(morphism_to_json(result)))
    else:
        print(_shift_text(str(result), args.weights))
    logger.debug(f"Правил применено: {engine.rule_firings}")
    return EXIT_OK


def _run_center(args: argparse.Namespace) -> int:
    service = CenterService(ZAlgebra(args.p))
    outcome = service.verify(args.eve, args.bound, args.margin, solver=args.solver)
    print(dumps(outcome.document))
    print(outcome.summary)
    return EXIT_OK if outcome.ok else EXIT_FAILED


def _run_variant(args: argparse.Namespace) -> int:
    spec = VariantSpec(args.kind, args.base)
    if args.path:
        algebra = VariantAlgebra(spec)
        path = tuple(int(x) for x in args.path.split(","))
        print(dumps(morphism_to_json(algebra.compose_word(path))))
        return EXIT_OK
    if args.export:
        algebra = VariantAlgebra(spec)
        vertices = variant_vertices(spec, args.bound)
        if args.export == "dot":
            print(DotVariantExporter().export(algebra, vertices))
        else:
            print(dumps(variant_window_to_json(algebra, vertices)))
        return EXIT_OK
    outcome = VariantService().verify(spec, args.bound, args.margin)
    print(dumps(outcome.document))
    print(outcome.summary)
    return EXIT_OK if outcome.ok else EXIT_FAILED


def _run_donkin(args: argparse.Namespace) -> int:
    if args.split:
        factor, rest = donkin_split(args.v, args.p)
        print(f"{factor} (x) T({rest - 1})")
        return EXIT_OK
    if args.class_of is not None:
        result = donkin_class_split(args.v, args.class_of, args.p)
    else:
        result = donkin_factorize(args.v, args.p)
    print(result.pruned() if args.pruned else result)
    return EXIT_OK


_HANDLERS = {
    "digits": _run_digits,
    "admissible": _run_admissible,
    "reflect": _run_reflect,
    "quiver": _run_quiver,
    "homdim": _run_hom,
    "hombasis": _run_hom,
    "normalize": _run_normalize,
    "center": _run_center,
    "variant": _run_variant,
    "donkin": _run_donkin,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа CLI.

    Returns:
        int: код выхода
    """
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except ValueError as exc:
        logger.error(f"{args.command}: {exc}")
        return EXIT_USAGE
