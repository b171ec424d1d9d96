from collections import defaultdict
from typing import Dict, List

from sympy import primitive_root

from core.domain.entities.group_spec import (
    Cyclic,
    CyclicExponentFamily,
    CyclicPrimeFamily,
    GroupSpec,
    PAdicComplete,
    PAdicPrimeFamily,
    Prufer,
    Rationals,
)
from core.domain.entities.verdicts import (
    BasicPredicates,
    ClassifyReport,
    GZeroIndex,
    GZeroReport,
    SbRoute,
    SbVerdict,
    StabilityClass,
    UnipotenceWitness,
    UnipotenceWitnessKind,
)
from core.domain.exceptions.witnesses import NotApplicableException
from core.service.parsers.spec_parser import SpecParser
from core.service.solvers.group_spec_solver import split_reduced_divisible
from core.service.solvers.invariants_solver import sz_invariants

DEFAULT_WINDOW = 50

REASONS = {
    SbRoute.NONE: 'условие 3: G есть прямая сумма делимой группы и периодической группы ограниченной экспоненты',
    SbRoute.EXTERNAL_NON_SUPERSTABLE: 'теория не суперстабильна, контрпример строится вне этой библиотеки',
    SbRoute.PADIC_WITNESS: 'есть слагаемое Zhat(p): пара оболочек в (Zhat(p))^k биэмбеддабельна и не изоморфна',
    SbRoute.SOCLE_WITNESS: 'есть бесконечное семейство Z/p^k по простым: пара подгрупп произведения по цоколю',
}


def basic_predicates(spec: GroupSpec) -> BasicPredicates:
    """
    Делимость, редуцированность и ограниченность.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        BasicPredicates: Свойства группы.
    """
    divisible_entries = spec.families(Prufer, Rationals)
    return BasicPredicates(
        divisible=len(divisible_entries) == len(spec),
        reduced=not divisible_entries,
        exponent=sz_invariants(spec).exponent,
    )


def _has_infinite_family(spec: GroupSpec) -> bool:
    return any(mult.infinite for _, mult in spec.families(CyclicPrimeFamily, PAdicPrimeFamily))


def stability_class(spec: GroupSpec) -> StabilityClass:
    """
    Класс стабильности полной теории группы.

    Теория не суперстабильна, если есть семейство Z/p^k по всем k при фиксированном p или
    бесконечное по простым семейство редуцированных слагаемых бесконечной кратности.
    Теория ω-стабильна, если группа имеет вид ⊕ Z/p^k ⊕ ⊕ Z(p^∞) ⊕ Q.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        StabilityClass: Класс стабильности.
    """
    if spec.families(CyclicExponentFamily) or _has_infinite_family(spec):
        return StabilityClass.NOT_SUPERSTABLE
    if len(spec.families(Cyclic, Prufer, Rationals)) == len(spec):
        return StabilityClass.OMEGA_STABLE
    return StabilityClass.SUPERSTABLE_NOT_OMEGA_STABLE


def _route(spec: GroupSpec) -> SbRoute:
    for family, mult in spec.entries:
        if isinstance(family, CyclicExponentFamily):
            return SbRoute.EXTERNAL_NON_SUPERSTABLE
        if isinstance(family, (CyclicPrimeFamily, PAdicPrimeFamily)) and mult.infinite:
            return SbRoute.EXTERNAL_NON_SUPERSTABLE
    if spec.families(PAdicComplete, PAdicPrimeFamily):
        return SbRoute.PADIC_WITNESS
    if spec.families(CyclicPrimeFamily):
        return SbRoute.SOCLE_WITNESS
    return SbRoute.NONE


def has_sb(spec: GroupSpec) -> SbVerdict:
    """
    Свойство Шрёдера-Бернштейна для модели полной теории группы.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        SbVerdict: Вердикт и маршрут построения свидетеля.
    """
    route = _route(spec)
    return SbVerdict(has_sb=route == SbRoute.NONE, route=route, reason=REASONS[route])


def condition3_holds(spec: GroupSpec) -> bool:
    """
    Условие 3: G = D ⊕ T, D делима, T периодическая ограниченной экспоненты.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        bool: Признак выполнения условия.
    """
    split = split_reduced_divisible(spec)
    return split.k_part.is_trivial and sz_invariants(split.c_part).bounded


def g_zero_index(spec: GroupSpec) -> GZeroIndex:
    """
    Индекс [G : G°] по решётке p.p.-определимых подгрупп p^a·G[p^b].

    Для ω-стабильной группы при каждом p слагаемое Z/p^k конечной кратности m вносит p^{c·m},
    где c = 0, если есть показатель k' ≥ k бесконечной кратности, иначе c = k − k',
    k' — наибольший меньший показатель бесконечной кратности (или 0).
    Делимая часть вклада не даёт. Для остальных групп индекс равен 2^ℵ₀.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        GZeroIndex: Индекс.
    """
    if stability_class(spec) != StabilityClass.OMEGA_STABLE:
        return GZeroIndex(None)

    by_prime: Dict[int, List] = defaultdict(list)
    for family, mult in spec.families(Cyclic):
        by_prime[family.p].append((family.k, mult))

    index = 1
    for p, types in by_prime.items():
        infinite = [k for k, mult in types if mult.infinite]
        for k, mult in types:
            if mult.infinite or any(k0 >= k for k0 in infinite):
                continue
            below = max((k0 for k0 in infinite if k0 < k), default=0)
            index *= p ** ((k - below) * mult.value)
    return GZeroIndex(index)


def _scalar_of_order_p_minus_1(p: int, k: int) -> int:
    return pow(primitive_root(p), p ** (k - 1), p ** k)


def unipotence_report(spec: GroupSpec, window: int = DEFAULT_WINDOW) -> GZeroReport:
    """
    Унипотентность автоморфизмов G/G° со свидетелем при её нарушении.

    Args:
        spec (GroupSpec): Нормализованное описание суперстабильной теории.
        window (int): Число простых в описании покоординатных скаляров.

    Returns:
        GZeroReport: Индекс, вердикт и свидетель.

    Raises:
        NotApplicableException: Если теория не суперстабильна.
    """
    stability = stability_class(spec)
    if stability == StabilityClass.NOT_SUPERSTABLE:
        raise NotApplicableException(f'условие 4 предполагает суперстабильность, {SpecParser.spec_to_str(spec)}')
    index = g_zero_index(spec)
    if stability == StabilityClass.OMEGA_STABLE:
        return GZeroReport(index, True, None)

    padic = spec.families(PAdicComplete, PAdicPrimeFamily)
    if padic:
        family = padic[0][0]
        p = family.p if isinstance(family, PAdicComplete) else family.primes.first(1)[0]
        witness = UnipotenceWitness(
            kind=UnipotenceWitnessKind.SCALAR_ON_K,
            primes=(p,),
            scalars=(),
            orders=(),
            description=f'умножение на p-адическую единицу, не являющуюся корнем из единицы, на слагаемом Zhat({p})',
        )
        return GZeroReport(index, False, witness)

    family, _ = spec.families(CyclicPrimeFamily)[0]
    primes = tuple(family.primes.first(window))
    witness = UnipotenceWitness(
        kind=UnipotenceWitnessKind.COORDINATE_SCALARS,
        primes=primes,
        scalars=tuple(_scalar_of_order_p_minus_1(p, family.k) for p in primes),
        orders=tuple(p - 1 for p in primes),
        description=f'покоординатное умножение на скаляры порядка p - 1 в Z/p^{family.k} по простым семейства',
    )
    return GZeroReport(index, False, witness)


def classify_report(spec: GroupSpec, window: int = DEFAULT_WINDOW) -> ClassifyReport:
    """
    Четыре эквивалентных условия свойства SB с признаком их согласованности.

    Args:
        spec (GroupSpec): Нормализованное описание.
        window (int): Число простых в описании свидетеля унипотентности.

    Returns:
        ClassifyReport: Сводка.
    """
    stability = stability_class(spec)
    verdict = has_sb(spec)
    condition3 = condition3_holds(spec)
    g_zero = None if stability == StabilityClass.NOT_SUPERSTABLE else unipotence_report(spec, window)
    omega_stable = stability == StabilityClass.OMEGA_STABLE

    agree = verdict.has_sb == omega_stable == condition3
    agree = agree and (verdict.route == SbRoute.EXTERNAL_NON_SUPERSTABLE) == (stability == StabilityClass.NOT_SUPERSTABLE)
    if g_zero is not None:
        agree = agree and g_zero.unipotent_all == omega_stable
    return ClassifyReport(
        stability_class=stability,
        verdict=verdict,
        condition3=condition3,
        g_zero=g_zero,
        g_zero_index=g_zero_index(spec),
        conditions_agree=agree,
    )
