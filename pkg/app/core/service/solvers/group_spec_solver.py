from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from sympy import factorint

from core.domain.entities.cardinal import ZERO, Cardinal
from core.domain.entities.group_spec import (
    Cyclic,
    CyclicExponentFamily,
    CyclicModulus,
    CyclicPrimeFamily,
    Entry,
    ExponentSet,
    GroupSpec,
    MSplit,
    PAdicComplete,
    PAdicPrimeFamily,
    PrimeSet,
    Prufer,
    Rationals,
    ReducedDivisibleSplit,
)
from core.domain.exceptions.groups import InvalidFactorException, PreconditionViolatedException
from core.service.parsers.spec_parser import SpecParser


def parse_spec(spec_str: str) -> GroupSpec:
    """
    Разбор и нормализация строкового описания группы.

    Args:
        spec_str (str): Строка в грамматике описаний, например "Z/8^3 + Q^aleph(1)".

    Returns:
        GroupSpec: Нормальная форма.
    """
    return normalize(SpecParser.str_to_spec(spec_str).entries)


def _expand(entries: Iterable[Entry]) -> List[Entry]:
    expanded = []
    for family, mult in entries:
        if mult.is_zero:
            continue
        if isinstance(family, CyclicModulus):
            expanded.extend((Cyclic(p, k), mult) for p, k in sorted(factorint(family.n).items()))
        elif isinstance(family, CyclicPrimeFamily) and family.primes.is_finite:
            expanded.extend((Cyclic(p, family.k), mult) for p in family.primes.iter_primes())
        elif isinstance(family, CyclicExponentFamily) and family.exponents.is_finite:
            expanded.extend((Cyclic(family.p, k), mult) for k in family.exponents.iter_exponents())
        elif isinstance(family, PAdicPrimeFamily) and family.primes.is_finite:
            expanded.extend((PAdicComplete(p), mult) for p in family.primes.iter_primes())
        else:
            expanded.append((family, mult))
    return expanded


def _sum(cardinals: Iterable[Cardinal]) -> Cardinal:
    total = ZERO
    for cardinal in cardinals:
        total += cardinal
    return total


def _normalize_cyclic(expanded: List[Entry]) -> List[Entry]:
    points: Dict[Tuple[int, int], Cardinal] = defaultdict(lambda: ZERO)
    by_exponent: Dict[int, List[Tuple[FrozenSet, Cardinal]]] = defaultdict(list)
    by_prime: Dict[int, List[Tuple[FrozenSet, Cardinal]]] = defaultdict(list)

    for family, mult in expanded:
        if isinstance(family, Cyclic):
            points[family.p, family.k] += mult
        elif isinstance(family, CyclicPrimeFamily):
            by_exponent[family.k].append((family.primes.primes, mult))
        elif isinstance(family, CyclicExponentFamily):
            by_prime[family.p].append((family.exponents.exponents, mult))

    generic_by_exponent = {k: _sum(mult for _, mult in fams) for k, fams in by_exponent.items()}
    generic_by_prime = {p: _sum(mult for _, mult in fams) for p, fams in by_prime.items()}

    interesting: Set[Tuple[int, int]] = set(points)
    for k, fams in by_exponent.items():
        interesting.update((p, k) for excluded, _ in fams for p in excluded)
        interesting.update((p, k) for p in by_prime)
    for p, fams in by_prime.items():
        interesting.update((p, k) for excluded, _ in fams for k in excluded)

    def total_at(p: int, k: int) -> Cardinal:
        total = points.get((p, k), ZERO)
        total += _sum(mult for excluded, mult in by_exponent.get(k, ()) if p not in excluded)
        total += _sum(mult for excluded, mult in by_prime.get(p, ()) if k not in excluded)
        return total

    prime_exceptions: Dict[int, Set[int]] = defaultdict(set)
    exponent_exceptions: Dict[int, Set[int]] = defaultdict(set)
    singletons: List[Entry] = []
    for p, k in interesting:
        total = total_at(p, k)
        in_prime_family = k in by_exponent
        in_exponent_family = p in by_prime
        if in_prime_family and in_exponent_family:
            prime_exceptions[k].add(p)
            exponent_exceptions[p].add(k)
        elif in_prime_family:
            if total == generic_by_exponent[k]:
                continue
            prime_exceptions[k].add(p)
        elif in_exponent_family:
            if total == generic_by_prime[p]:
                continue
            exponent_exceptions[p].add(k)
        if not total.is_zero:
            singletons.append((Cyclic(p, k), total))

    result = singletons
    result += [
        (CyclicPrimeFamily(PrimeSet.all_except(prime_exceptions[k]), k), generic)
        for k, generic in generic_by_exponent.items()
    ]
    result += [
        (CyclicExponentFamily(p, ExponentSet.all_except(exponent_exceptions[p])), generic)
        for p, generic in generic_by_prime.items()
    ]
    return result


def _normalize_padic(expanded: List[Entry]) -> List[Entry]:
    points: Dict[int, Cardinal] = defaultdict(lambda: ZERO)
    families: List[Tuple[FrozenSet, Cardinal]] = []
    for family, mult in expanded:
        if isinstance(family, PAdicComplete):
            points[family.p] += mult
        elif isinstance(family, PAdicPrimeFamily):
            families.append((family.primes.primes, mult))

    if not families:
        return [(PAdicComplete(p), mult) for p, mult in points.items()]

    generic = _sum(mult for _, mult in families)
    interesting = set(points).union(*(excluded for excluded, _ in families))
    exceptions = set()
    result: List[Entry] = []
    for p in interesting:
        total = points.get(p, ZERO) + _sum(mult for excluded, mult in families if p not in excluded)
        if total == generic:
            continue
        exceptions.add(p)
        if not total.is_zero:
            result.append((PAdicComplete(p), total))
    result.append((PAdicPrimeFamily(PrimeSet.all_except(exceptions)), generic))
    return result


def normalize(entries: Iterable[Entry]) -> GroupSpec:
    """
    Нормальная форма списка слагаемых.

    Составные модули раскладываются по китайской теореме об остатках, конечные семейства
    раскрываются, одинаковые слагаемые складываются по кратности. Бесконечные семейства
    сливаются (одно семейство на показатель, на простое и для Zhat), а точки, где суммарная
    кратность отличается от общей кратности семейства или которые покрыты двумя семействами,
    выносятся в отдельные слагаемые. Операция идемпотентна и не зависит от порядка.

    Args:
        entries (Iterable[Entry]): Пары (семейство, кратность) в любом порядке.

    Returns:
        GroupSpec: Нормальная форма.
    """
    expanded = _expand(entries)

    divisible: Dict[object, Cardinal] = defaultdict(lambda: ZERO)
    for family, mult in expanded:
        if isinstance(family, (Prufer, Rationals)):
            divisible[family] += mult

    result = _normalize_cyclic(expanded) + _normalize_padic(expanded) + list(divisible.items())
    return GroupSpec(tuple(sorted(result, key=lambda entry: entry[0].sort_key())))


def direct_sum(first: GroupSpec, second: GroupSpec) -> GroupSpec:
    """
    Прямая сумма двух групп.

    Args:
        first (GroupSpec): Первое слагаемое.
        second (GroupSpec): Второе слагаемое.

    Returns:
        GroupSpec: Нормальная форма суммы.
    """
    return normalize(first.entries + second.entries)


def socle(spec: GroupSpec) -> GroupSpec:
    """
    Цоколь группы: прямая сумма всех минимальных подгрупп.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        GroupSpec: Нормальная форма цоколя.
    """
    entries: List[Entry] = []
    for family, mult in spec.entries:
        if isinstance(family, (Cyclic, Prufer)):
            entries.append((Cyclic(family.p, 1), mult))
        elif isinstance(family, CyclicPrimeFamily):
            entries.append((CyclicPrimeFamily(family.primes, 1), mult))
        elif isinstance(family, CyclicExponentFamily):
            entries.append((Cyclic(family.p, 1), mult.times_infinite()))
    return normalize(entries)


def m_split(spec: GroupSpec, m: int) -> MSplit:
    """
    Разложение G = G[M] ⊕ MG.

    Требуется, чтобы M аннулировал циклическую p-примарную часть при каждом p | M.
    Слагаемое Прюфера при p | M даёт Z/p^{v_p(M)} в G[M] и целиком остаётся в дополнении;
    такое перекрытие возвращается отдельно, а флаг extended отмечает его наличие.

    Args:
        spec (GroupSpec): Нормализованное описание.
        m (int): Число M ≥ 1.

    Returns:
        MSplit: Части разложения.

    Raises:
        PreconditionViolatedException: Если p^k не делит M для слагаемого Z/p^k при p | M.
    """
    if m < 1:
        raise InvalidFactorException(m)
    valuations = factorint(m)
    torsion: List[Entry] = []
    complement: List[Entry] = []
    overlap: List[Entry] = []

    for family, mult in spec.entries:
        if isinstance(family, Cyclic) and family.p in valuations:
            if family.k > valuations[family.p]:
                raise PreconditionViolatedException(family.p, family.k, m)
            torsion.append((family, mult))
        elif isinstance(family, CyclicPrimeFamily):
            covered = [p for p in valuations if family.primes.contains(p)]
            for p in covered:
                if family.k > valuations[p]:
                    raise PreconditionViolatedException(p, family.k, m)
                torsion.append((Cyclic(p, family.k), mult))
            complement.append((CyclicPrimeFamily(family.primes.without(covered), family.k), mult))
        elif isinstance(family, CyclicExponentFamily) and family.p in valuations:
            too_big = next((k for k in family.exponents.iter_exponents() if k > valuations[family.p]), None)
            if too_big is not None:
                raise PreconditionViolatedException(family.p, too_big, m)
            torsion.extend((Cyclic(family.p, k), mult) for k in family.exponents.iter_exponents())
        elif isinstance(family, Prufer) and family.p in valuations:
            part = (Cyclic(family.p, valuations[family.p]), mult)
            torsion.append(part)
            overlap.append(part)
            complement.append((family, mult))
        else:
            complement.append((family, mult))

    return MSplit(m, normalize(torsion), normalize(complement), normalize(overlap), bool(overlap))


def split_reduced_divisible(spec: GroupSpec) -> ReducedDivisibleSplit:
    """
    Разбиение слагаемых на части K (Zhat), C (циклические) и D (Прюфер, Q).

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        ReducedDivisibleSplit: Тройка (K, C, D).
    """
    return ReducedDivisibleSplit(
        GroupSpec(tuple(spec.families(PAdicComplete, PAdicPrimeFamily))),
        GroupSpec(tuple(spec.families(Cyclic, CyclicPrimeFamily, CyclicExponentFamily))),
        GroupSpec(tuple(spec.families(Prufer, Rationals))),
    )
