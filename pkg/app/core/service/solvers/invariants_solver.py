from math import lcm
from typing import Dict, List, Optional, Tuple

from core.domain.entities.cardinal import ALEPH_0, ZERO, Cardinal
from core.domain.entities.group_spec import (
    Cyclic,
    CyclicExponentFamily,
    CyclicPrimeFamily,
    GroupSpec,
    PAdicComplete,
    PAdicPrimeFamily,
    PrimeSet,
    Prufer,
)
from core.domain.entities.invariants import DivisibleInvariants, SzInvariants, UlmTable
from core.service.solvers.group_spec_solver import normalize, split_reduced_divisible


def ulm_symbolic(spec: GroupSpec, p: int, i: int) -> Cardinal:
    """
    i-й инвариант Ульма: кратность Z/p^{i+1}, включая вклад семейств.

    Args:
        spec (GroupSpec): Нормализованное описание.
        p (int): Простое число.
        i (int): Номер инварианта, i ≥ 0.

    Returns:
        Cardinal: Значение инварианта.
    """
    return spec.cyclic_multiplicity(p, i + 1)


def ulm_table(spec: GroupSpec) -> UlmTable:
    return UlmTable(
        entries=tuple((f.p, f.k - 1, mult) for f, mult in spec.families(Cyclic)),
        prime_families=tuple((f.k - 1, f.primes, mult) for f, mult in spec.families(CyclicPrimeFamily)),
        exponent_families=tuple((f.p, f.exponents, mult) for f, mult in spec.families(CyclicExponentFamily)),
    )


def divisible_invariants(spec: GroupSpec) -> DivisibleInvariants:
    """
    Инварианты делимой части, вычисленные только по D-части.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        DivisibleInvariants: Кратности Прюфера и ранг Q-части.
    """
    d_part = split_reduced_divisible(spec).d_part
    return DivisibleInvariants(
        prufer_count=tuple((family.p, mult) for family, mult in d_part.families(Prufer)),
        rational_rank=d_part.rational_rank(),
    )


def _beta(capped: GroupSpec, exponent_primes: List[int]) -> Tuple[Tuple[Tuple[int, Cardinal], ...], Optional[Tuple[PrimeSet, Cardinal]]]:
    family = next(iter(capped.families(PAdicPrimeFamily)), None)
    interesting = {f.p for f, _ in capped.families(PAdicComplete)} | set(exponent_primes)
    if family:
        interesting |= family[0].primes.primes

    def value(p: int) -> Cardinal:
        return (capped.padic_multiplicity(p) + (ALEPH_0 if p in exponent_primes else ZERO)).capped()

    if family is None:
        points = {p: value(p) for p in interesting}
        return tuple(sorted((p, v) for p, v in points.items() if not v.is_zero)), None

    generic = family[1]
    exceptions = {p for p in interesting if value(p) != generic}
    points = tuple(sorted((p, value(p)) for p in exceptions if not value(p).is_zero))
    return points, (PrimeSet.all_except(exceptions), generic)


def sz_invariants(spec: GroupSpec) -> SzInvariants:
    """
    Инварианты Шмелевой как сумма вкладов слагаемых.

    Z/p^k даёт 1 в α(p, k); Z(p^∞) даёт 1 в γ(p); Zhat(p) даёт 1 в β(p); Q влияет только
    на неограниченность. Семейство Z/p^k по всем k делает β(p) и γ(p) равными ℵ₀.
    Все значения ограничены ℵ₀.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        SzInvariants: Инварианты.
    """
    capped = normalize((family, mult.capped()) for family, mult in spec.entries)
    exponent_primes = [f.p for f, _ in capped.families(CyclicExponentFamily)]

    gamma: Dict[int, Cardinal] = {}
    for family, mult in capped.families(Prufer):
        gamma[family.p] = mult
    for p in exponent_primes:
        gamma[p] = ALEPH_0
    beta, beta_family = _beta(capped, exponent_primes)

    bounded = all(isinstance(family, Cyclic) for family, _ in capped.entries)
    exponent = lcm(1, *(family.order for family, _ in capped.entries)) if bounded else None

    return SzInvariants(
        alpha=tuple((f.p, f.k, mult) for f, mult in capped.families(Cyclic)),
        alpha_prime_families=tuple((f.k, f.primes, mult) for f, mult in capped.families(CyclicPrimeFamily)),
        alpha_exponent_families=tuple((f.p, f.exponents, mult) for f, mult in capped.families(CyclicExponentFamily)),
        beta=beta,
        beta_family=beta_family,
        gamma=tuple(sorted(gamma.items())),
        bounded=bounded,
        exponent=exponent,
        nontrivial=not spec.is_trivial,
    )


def elem_equivalent(first: GroupSpec, second: GroupSpec) -> bool:
    """
    Элементарная эквивалентность: совпадение инвариантов Шмелевой, ограниченности и нетривиальности.

    Args:
        first (GroupSpec): Первое описание.
        second (GroupSpec): Второе описание.

    Returns:
        bool: Признак элементарной эквивалентности.
    """
    return sz_invariants(first) == sz_invariants(second)


def iso_standard(first: GroupSpec, second: GroupSpec) -> bool:
    """
    Изоморфизм групп стандартного вида: совпадение нормальных форм.

    Args:
        first (GroupSpec): Первое описание.
        second (GroupSpec): Второе описание.

    Returns:
        bool: Признак изоморфизма.
    """
    return normalize(first.entries) == normalize(second.entries)
