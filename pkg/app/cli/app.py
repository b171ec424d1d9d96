import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.domain.entities.config import FORMATS, CliConfig
from core.domain.entities.group_spec import GroupSpec
from core.domain.entities.verdicts import SbRoute
from core.domain.exceptions.base import BudgetException, PreconditionException
from core.domain.exceptions.parsers import SpecParserException, StrToMatrixException
from core.domain.exceptions.witnesses import NotApplicableException, NotSuperstableException
from core.service.parsers.matrix_parser import MatrixParser
from core.service.parsers.report_renderer import ReportRenderer
from core.service.parsers.spec_parser import SpecParser
from core.service.solvers.classify_solver import classify_report, has_sb
from core.service.solvers.finite_solver import (
    is_pure_subgroup_bruteforce,
    iso_finite_bruteforce,
    smith_normal_form,
    ulm_bruteforce,
)
from core.service.solvers.group_spec_solver import parse_spec
from core.service.solvers.invariants_solver import (
    divisible_invariants,
    elem_equivalent,
    iso_standard,
    sz_invariants,
    ulm_table,
)
from core.service.solvers.padic_witness_solver import assemble_cor3, padic_prop_incl_check
from core.service.solvers.socle_witness_solver import case_b_split, reduce_unbounded, socle_prop_incl_check

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

ROUTES = ('auto', 'padic', 'socle')


def _common_options() -> argparse.ArgumentParser:
    defaults = CliConfig()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--precision', type=int, default=defaults.precision, help='точность N p-адических вычислений')
    common.add_argument('--degree', type=int, default=defaults.degree, help='граница степени d в сертификатах')
    common.add_argument('--height', type=int, default=defaults.height, help='граница высоты B в сертификатах')
    common.add_argument('--window', type=int, default=defaults.window, help='число W простых в окне')
    common.add_argument('--threshold', type=int, default=defaults.threshold, help='порог сертификата избегания')
    common.add_argument('--seed', type=int, default=defaults.seed, help='зерно')
    common.add_argument('--order-bound', type=int, default=defaults.order_bound, help='граница порядка для переборов')
    common.add_argument('--budget', type=int, default=defaults.budget, help='бюджет переборов')
    common.add_argument('--prop-incl-bound', type=int, default=defaults.prop_incl_bound, help='наибольшее m в проверке цепочки')
    common.add_argument('--samples', type=int, default=defaults.samples, help='число элементов в пробах')
    common.add_argument('--format', choices=FORMATS, default=defaults.format, help='формат отчёта')
    common.add_argument('--out', type=Path, default=None, help='файл для отчёта')
    common.add_argument('--verbose', action='store_true', help='подробный журнал в stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='sb-abelian',
        description='Свойство Шрёдера-Бернштейна для теорий абелевых групп.',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    classify = commands.add_parser('classify', parents=[common], help='четыре эквивалентных условия свойства SB')
    classify.add_argument('spec')

    invariants = commands.add_parser('invariants', parents=[common], help='инварианты Шмелевой и Ульма')
    invariants.add_argument('spec')

    for name, text in (('eq', 'элементарная эквивалентность'), ('iso', 'изоморфизм групп стандартного вида')):
        command = commands.add_parser(name, parents=[common], help=text)
        command.add_argument('first')
        command.add_argument('second')

    witness = commands.add_parser(
        'witness',
        parents=[common],
        help='пара биэмбеддабельных неизоморфных моделей',
        description=(
            'Пара биэмбеддабельных неизоморфных моделей. Код возврата 3, если теория обладает свойством SB, '
            'если группа не суперстабильна или если Zhat(p) входит с бесконечной кратностью: '
            'для такой p-адической части ограниченного свидетеля нет.'
        ),
    )
    witness.add_argument('spec')
    witness.add_argument('--route', choices=ROUTES, default='auto')

    oracle = commands.add_parser('oracle', help='переборные проверки на конечных группах')
    checks = oracle.add_subparsers(dest='check', required=True)
    snf = checks.add_parser('snf', parents=[common], help='нормальная форма Смита')
    snf.add_argument('matrix')
    pure = checks.add_parser('pure', parents=[common], help='чистота подгруппы')
    pure.add_argument('factors')
    pure.add_argument('generators')
    ulm = checks.add_parser('ulm', parents=[common], help='инвариант Ульма p-группы')
    ulm.add_argument('factors')
    ulm.add_argument('p', type=int)
    ulm.add_argument('i', type=int, help='номер инварианта, i ≥ 0')
    iso_check = checks.add_parser('iso', parents=[common], help='изоморфизм конечных групп')
    iso_check.add_argument('first')
    iso_check.add_argument('second')
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        precision=args.precision,
        degree=args.degree,
        height=args.height,
        window=args.window,
        threshold=args.threshold,
        seed=args.seed,
        order_bound=args.order_bound,
        budget=args.budget,
        prop_incl_bound=args.prop_incl_bound,
        samples=args.samples,
        format=args.format,
        out=args.out,
        verbose=args.verbose,
    )


def _classify(args: argparse.Namespace, config: CliConfig) -> Dict[str, Any]:
    spec = parse_spec(args.spec)
    return ReportRenderer.classify(spec, classify_report(spec, config.window))


def _invariants(args: argparse.Namespace, config: CliConfig) -> Dict[str, Any]:
    spec = parse_spec(args.spec)
    return ReportRenderer.invariants(spec, sz_invariants(spec), ulm_table(spec), divisible_invariants(spec))


def _eq(args: argparse.Namespace, config: CliConfig) -> Dict[str, Any]:
    first, second = parse_spec(args.first), parse_spec(args.second)
    return {
        'first': ReportRenderer.spec(first),
        'second': ReportRenderer.spec(second),
        'equivalent': elem_equivalent(first, second),
    }


def _iso(args: argparse.Namespace, config: CliConfig) -> Dict[str, Any]:
    first, second = parse_spec(args.first), parse_spec(args.second)
    return {
        'first': ReportRenderer.spec(first),
        'second': ReportRenderer.spec(second),
        'isomorphic': iso_standard(first, second),
    }


def _padic_witness(spec: GroupSpec, config: CliConfig) -> Dict[str, Any]:
    assembly = assemble_cor3(
        spec,
        seed=config.seed,
        window=config.window,
        degree=config.degree,
        height=config.height,
        precision=config.precision,
        budget=config.budget,
        samples=config.samples,
    )
    prop_incl = [
        {'p': w.p, 'entries': ReportRenderer.prop_incl(padic_prop_incl_check(w, config.prop_incl_bound, config.height))}
        for w in assembly.k_witness.components
    ]
    return {'cor3': ReportRenderer.cor3(assembly), 'prop_incl': prop_incl}


def _socle_witness(spec: GroupSpec, config: CliConfig) -> Dict[str, Any]:
    transcript = reduce_unbounded(
        spec,
        window=config.window,
        seed=config.seed,
        degree=config.degree,
        height=config.height,
        threshold=config.threshold,
        budget=config.budget,
    )
    split = case_b_split(spec)
    return {
        'transcript': ReportRenderer.transcript(transcript),
        'prop_incl': ReportRenderer.prop_incl(
            socle_prop_incl_check(transcript.witness, config.prop_incl_bound, config.height)
        ),
        'case_b': {
            'a_part': ReportRenderer.spec(split.a_part),
            'b_part': ReportRenderer.spec(split.b_part),
            'note': split.note,
        },
    }


def _witness(args: argparse.Namespace, config: CliConfig) -> Dict[str, Any]:
    spec = parse_spec(args.spec)
    spec_str = SpecParser.spec_to_str(spec)
    verdict = has_sb(spec)
    if verdict.route == SbRoute.NONE:
        raise NotApplicableException(f'теория группы {spec_str} ω-стабильна и обладает свойством SB, свидетеля нет')
    if verdict.route == SbRoute.EXTERNAL_NON_SUPERSTABLE:
        raise NotSuperstableException(spec_str)

    route = args.route
    if route == 'auto':
        route = 'padic' if verdict.route == SbRoute.PADIC_WITNESS else 'socle'
    logger.info('witness route %s for %s', route, spec_str)
    body = _padic_witness(spec, config) if route == 'padic' else _socle_witness(spec, config)
    return {'spec': spec_str, 'route': route, **body}


def _oracle(args: argparse.Namespace, config: CliConfig) -> Dict[str, Any]:
    if args.check == 'snf':
        return {'check': 'snf', **ReportRenderer.smith(smith_normal_form(MatrixParser.str_to_matrix(args.matrix)))}
    if args.check == 'pure':
        group = MatrixParser.str_to_group(args.factors)
        generators = MatrixParser.str_to_elements(args.generators)
        if not all(group.contains(x) for x in generators):
            raise StrToMatrixException(args.generators)
        return {
            'check': 'pure',
            'factors': list(group.factors),
            'generators': [list(x) for x in generators],
            'pure': is_pure_subgroup_bruteforce(group, generators, config.order_bound),
        }
    if args.check == 'ulm':
        group = MatrixParser.str_to_group(args.factors)
        return {
            'check': 'ulm',
            'factors': list(group.factors),
            'p': args.p,
            'i': args.i,
            'value': ulm_bruteforce(group, args.p, args.i, config.order_bound),
        }
    first, second = MatrixParser.str_to_group(args.first), MatrixParser.str_to_group(args.second)
    return {
        'check': 'iso',
        'first': list(first.factors),
        'second': list(second.factors),
        'isomorphic': iso_finite_bruteforce(first, second, config.order_bound),
    }


HANDLERS = {
    'classify': _classify,
    'invariants': _invariants,
    'eq': _eq,
    'iso': _iso,
    'witness': _witness,
    'oracle': _oracle,
}


def render(report: Dict[str, Any], config: CliConfig) -> str:
    if config.format == 'text':
        return ReportRenderer.to_text(report)
    return json.dumps(report, ensure_ascii=False, indent=2)


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа командной строки.

    Args:
        argv (Optional[List[str]]): Аргументы без имени программы.

    Returns:
        int: Код возврата: 0 при успехе, 2 при ошибке разбора, 3 при нарушении предусловия,
            4 при превышении бюджета.
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_PARSE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
        force=True,
    )
    try:
        config = config_from_args(args)
        report = ReportRenderer.envelope(args.command, HANDLERS[args.command](args, config))
    except SpecParserException as error:
        print(error.message, file=sys.stderr)
        return EXIT_PARSE
    except PreconditionException as error:
        print(error.message, file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetException as error:
        print(error.message, file=sys.stderr)
        return EXIT_BUDGET

    text = render(report, config)
    if config.out is not None:
        config.out.write_text(text + '\n', encoding='utf-8')
    else:
        print(text)
    return EXIT_OK
