import logging
from math import lcm
from random import Random
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import factorint

from core.domain.entities.group_spec import Cyclic, CyclicPrimeFamily, GroupSpec, PrimeSet
from core.domain.entities.polynomial import IntPolynomial2
from core.domain.entities.socle_witness import (
    AvoidanceCertificate,
    CaseBSplit,
    PrimeWindow,
    ProductElement,
    ReductionStep,
    ReductionTranscript,
    SigmaPair,
    SocleWitness,
    Vector,
)
from core.domain.entities.verdicts import StabilityClass
from core.domain.entities.witness import GridShape, PropInclEntry
from core.domain.exceptions.numbers import BudgetExceededException
from core.domain.exceptions.witnesses import (
    BasePointZeroException,
    InvalidConfigException,
    NonCanonicalException,
    NotApplicableException,
    NotSuperstableException,
    SearchFailedException,
)
from core.service.parsers.spec_parser import SpecParser
from core.service.solvers.classify_solver import stability_class
from core.service.solvers.group_spec_solver import direct_sum, m_split, normalize, socle, split_reduced_divisible
from core.service.solvers.padic_solver import (
    DEFAULT_BUDGET,
    DEFAULT_DEGREE,
    DEFAULT_HEIGHT,
    box_monomials,
    search_space_size,
)

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 50
DEFAULT_THRESHOLD = 5
DEFAULT_MAX_ROUNDS = 100
DEFAULT_PROP_INCL_BOUND = 5

LIFT_NOTE = (
    'для ℓ = 1, 2 существует единственная чистая подгруппа K_ℓ ⊆ MG, содержащая H_ℓ, с цоколем H_ℓ; '
    'пара G[M] ⊕ K_1, G[M] ⊕ K_2 наследует биэмбеддабельность, подъём не строится явно'
)
CASE_B_NOTE = (
    'C_ℓ читается как множество g ∈ H_ℓ, для которых при каждом n найдутся периодические a_i '
    'с g - Σ a_i ∈ nH_ℓ; прочтение отмечено и не проверяется'
)


def _coefficient_grid(width: int, height: int) -> np.ndarray:
    grid = np.indices((2 * height + 1,) * width, dtype=np.int32).reshape(width, -1).T - height
    return grid[np.any(grid != 0, axis=1)]


def _monomial_values(monomials: List[Tuple[int, int]], s: int, t: int, p: int) -> np.ndarray:
    return np.array([pow(s, i, p) * pow(t, j, p) % p for i, j in monomials], dtype=np.int32)


def _nonvanishing_counts(grid: np.ndarray, values: Dict[int, np.ndarray]) -> np.ndarray:
    counts = np.zeros(len(grid), dtype=np.int32)
    for p, v in values.items():
        counts += (grid @ v) % p != 0
    return counts


def choose_sigmas(
    window: PrimeWindow,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    threshold: int = DEFAULT_THRESHOLD,
    seed: int = 0,
    diagonal: bool = False,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    budget: int = DEFAULT_BUDGET,
) -> Tuple[SigmaPair, AvoidanceCertificate]:
    """
    Поиск единиц (σ_p, τ_p) на простых окна, при которых ни один ограниченный многочлен не
    обнуляется почти везде.

    Для каждого ненулевого q с 0 ≤ i, j ≤ d и |a_ij| ≤ B считается число простых окна, где
    q(σ_p, τ_p) ≠ 0 по модулю p; пара принимается, если минимум не меньше threshold.
    Пары выбираются случайно по зерну, не более max_rounds попыток.

    Args:
        window (PrimeWindow): Окно простых.
        degree (int): Граница d.
        height (int): Граница B.
        threshold (int): Требуемое число простых.
        seed (int): Зерно.
        diagonal (bool): Искать только пары σ = τ.
        max_rounds (int): Число попыток.
        budget (int): Бюджет перебора.

    Returns:
        Tuple[SigmaPair, AvoidanceCertificate]: Пара и сертификат.

    Raises:
        SearchFailedException: Если ни одна попытка не прошла.
        BudgetExceededException: Если (2B+1)^{(d+1)²} больше бюджета.
    """
    size = search_space_size(degree, height)
    if size > budget:
        raise BudgetExceededException(size, budget)
    monomials = box_monomials(degree)
    grid = _coefficient_grid(len(monomials), height)
    rng = Random(f'{seed}:sigmas')

    best: Optional[Tuple[int, int]] = None
    for attempt in range(1, max_rounds + 1):
        sigma = {p: rng.randrange(1, p) for p in window.window}
        tau = dict(sigma) if diagonal else {p: rng.randrange(1, p) for p in window.window}
        values = {p: _monomial_values(monomials, sigma[p], tau[p], p) for p in window.window}
        counts = _nonvanishing_counts(grid, values)
        worst = int(np.argmin(counts))
        minimum = int(counts[worst])
        logger.debug('round %s: min nonvanishing %s', attempt, minimum)
        if best is None or minimum > best[0]:
            best = (minimum, worst)
        if minimum >= threshold:
            certificate = AvoidanceCertificate(
                degree=degree,
                height=height,
                threshold=threshold,
                window=window.window,
                checked=len(grid),
                min_nonvanishing=minimum,
                worst_polynomial=_polynomial(monomials, grid[worst]),
                passed=True,
                diagonal=diagonal,
                rounds=attempt,
            )
            logger.info('sigmas found after %s rounds, min nonvanishing %s', attempt, minimum)
            return SigmaPair(tuple(sorted(sigma.items())), tuple(sorted(tau.items())), seed), certificate

    raise SearchFailedException(window.window, str(_polynomial(monomials, grid[best[1]])))


def _polynomial(monomials: List[Tuple[int, int]], row: np.ndarray) -> IntPolynomial2:
    return IntPolynomial2(tuple(zip(monomials, (int(c) for c in row))))


def _check_prime(p: int, witness: SocleWitness) -> None:
    if not witness.window.primes.contains(p):
        raise InvalidConfigException('p', p)


def _tail_value(x: ProductElement, p: int, witness: SocleWitness) -> int:
    if not x.has_tail or x.n % p == 0:
        return 0
    s, t = witness.sigmas.sigma_at(p), witness.sigmas.tau_at(p)
    total = sum(c * pow(s, i, p) * pow(t, j, p) for (i, j), c in x.tail)
    return total * pow(x.n, -1, p) % p


def evaluate(x: ProductElement, p: int, witness: SocleWitness) -> Vector:
    """
    Компонента элемента на простом p ∈ S.

    Args:
        x (ProductElement): Элемент.
        p (int): Простое из S.
        witness (SocleWitness): Свидетель.

    Returns:
        Vector: Вектор над Z/p длины r_p.
    """
    _check_prime(p, witness)
    scalar = _tail_value(x, p, witness)
    base = witness.base_at(p)
    exception = dict(x.exceptions).get(p, (0,) * len(base))
    return tuple((scalar * a + b) % p for a, b in zip(base, exception))


def alpha_inv(x: ProductElement, n: int) -> ProductElement:
    """
    Отображение α_{1/n}: на p | n компонента обнуляется, на остальных умножается на n^{-1} mod p.

    Args:
        x (ProductElement): Элемент.
        n (int): Число n ≥ 1.

    Returns:
        ProductElement: α_{1/n}(x).
    """
    if n < 1:
        raise InvalidConfigException('n', n)
    exceptions = {
        p: tuple(a * pow(n, -1, p) for a in vector)
        for p, vector in x.exceptions
        if n % p
    }
    return ProductElement.make(exceptions, x.n * n, dict(x.tail))


def scale(x: ProductElement, c: int) -> ProductElement:
    return ProductElement.make(
        {p: tuple(a * c for a in vector) for p, vector in x.exceptions},
        x.n,
        {m: a * c for m, a in x.tail},
    )


def add(first: ProductElement, second: ProductElement, witness: SocleWitness) -> ProductElement:
    """
    Сумма элементов: хвосты приводятся к общему знаменателю, а поправки на простых,
    делящих новый знаменатель, переносятся в конечный носитель.

    Args:
        first (ProductElement): Первое слагаемое.
        second (ProductElement): Второе слагаемое.
        witness (SocleWitness): Свидетель.

    Returns:
        ProductElement: Сумма.
    """
    n = lcm(first.n, second.n)
    exceptions: Dict[int, List[int]] = {}
    tail: Dict[Tuple[int, int], int] = {}

    def accumulate(p: int, vector) -> None:
        current = exceptions.setdefault(p, [0] * len(vector))
        for index, a in enumerate(vector):
            current[index] += a

    for x in (first, second):
        for p, vector in x.exceptions:
            accumulate(p, vector)
        if not x.has_tail:
            continue
        factor = n // x.n
        for monomial, c in x.tail:
            tail[monomial] = tail.get(monomial, 0) + c * factor
        for p in factorint(n):
            if x.n % p and witness.window.primes.contains(p):
                scalar = _tail_value(x, p, witness)
                accumulate(p, [scalar * a for a in witness.base_at(p)])

    return ProductElement.make({p: tuple(v) for p, v in exceptions.items()}, n, tail)


def apply_sigma(x: ProductElement, which: int, witness: SocleWitness) -> ProductElement:
    """
    Применение σ₁ (which = 1) или σ₂ (which = 2): сдвиг мономов хвоста и умножение носителя на скаляры.

    Args:
        x (ProductElement): Элемент.
        which (int): Номер автоморфизма.
        witness (SocleWitness): Свидетель.

    Returns:
        ProductElement: σ_which(x).
    """
    if which not in (1, 2):
        raise InvalidConfigException('which', which)
    di, dj = (1, 0) if which == 1 else (0, 1)
    exceptions = {
        p: tuple(a * witness.sigmas.scalar_at(p, which) for a in vector)
        for p, vector in x.exceptions
    }
    tail = {(i + di, j + dj): c for (i, j), c in x.tail}
    return ProductElement.make(exceptions, x.n, tail)


def apply_sigma_inverse_at(vector: Vector, p: int, which: int, witness: SocleWitness) -> Vector:
    inverse = pow(witness.sigmas.scalar_at(p, which), -1, p)
    return tuple(a * inverse % p for a in vector)


def product_membership(x: ProductElement, which: GridShape, witness: SocleWitness) -> bool:
    """
    Принадлежность H₁ или H₂: мономы хвоста лежат на сетке, носитель произволен.

    Ответ относителен сертификату избегания.

    Args:
        x (ProductElement): Элемент в нормальной форме.
        which (GridShape): H1 или H2.
        witness (SocleWitness): Свидетель.

    Returns:
        bool: Признак принадлежности.

    Raises:
        NonCanonicalException: Если носитель лежит вне S или ранги векторов не совпадают с r_p.
    """
    for p, vector in x.exceptions:
        if not witness.window.primes.contains(p) or len(vector) != witness.window.rank_at(p):
            raise NonCanonicalException(f'{p}: {vector}')
    grid = witness.grid(which)
    return all(grid.contains(i, j) for (i, j), _ in x.tail)


def socle_witness_build(
    window: PrimeWindow,
    seed: int = 0,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    threshold: int = DEFAULT_THRESHOLD,
    base_overrides: Dict[int, Vector] = None,
    diagonal: bool = False,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    budget: int = DEFAULT_BUDGET,
) -> SocleWitness:
    """
    Пара H₁, H₂ с K_ℓ = {σ₁^i σ₂^j(a)} по своей сетке.

    Args:
        window (PrimeWindow): Окно простых.
        seed (int): Зерно.
        degree (int): Граница d.
        height (int): Граница B.
        threshold (int): Требуемое число простых.
        base_overrides (Dict[int, Vector]): Проекции базовой точки, отличные от (1, ..., 1).
        diagonal (bool): Искать только пары σ = τ.
        max_rounds (int): Число попыток поиска.
        budget (int): Бюджет перебора.

    Returns:
        SocleWitness: Свидетель.

    Raises:
        BasePointZeroException: Если проекция базовой точки на простое окна равна нулю.
    """
    overrides = tuple(sorted((base_overrides or {}).items()))
    for p, vector in overrides:
        if len(vector) != window.rank_at(p):
            raise NonCanonicalException(f'{p}: {vector}')
        if p in window.window and not any(a % p for a in vector):
            raise BasePointZeroException(p)
    sigmas, certificate = choose_sigmas(window, degree, height, threshold, seed, diagonal, max_rounds, budget)
    return SocleWitness(window, sigmas, certificate, overrides)


def socle_prop_incl_check(
    witness: SocleWitness,
    m_max: int = DEFAULT_PROP_INCL_BOUND,
    height: int = DEFAULT_HEIGHT,
) -> List[PropInclEntry]:
    """
    Ограниченная проверка того, что σ₁σ₂^{m+1}(a) не выражается через σ₁(a), σ₁σ₂(a), ..., σ₁σ₂^m(a)
    по модулю элементов конечного носителя.

    Комбинация с ненулевым коэффициентом при целевом мономе должна быть ненулевой хотя бы
    на threshold простых окна.

    Args:
        witness (SocleWitness): Свидетель.
        m_max (int): Наибольшее m.
        height (int): Граница коэффициентов.

    Returns:
        List[PropInclEntry]: Результат для m = 0..m_max с минимальным числом ненулевых значений.
    """
    threshold = witness.certificate.threshold
    entries = []
    for m in range(m_max + 1):
        monomials = [(1, j) for j in range(m + 2)]
        grid = _coefficient_grid(len(monomials), height)
        grid = grid[grid[:, -1] != 0]
        values = {
            p: _monomial_values(monomials, witness.sigmas.sigma_at(p), witness.sigmas.tau_at(p), p)
            for p in witness.window.window
        }
        minimum = int(_nonvanishing_counts(grid, values).min())
        logger.debug('m=%s: min nonvanishing %s', m, minimum)
        entries.append(PropInclEntry(m, minimum >= threshold, minimum))
    return entries


def _bounded_modulus(c_part: GroupSpec) -> int:
    infinite_primes = {family.p for family, mult in c_part.families(Cyclic) if mult.infinite}
    modulus = 1
    for p in sorted(infinite_primes):
        exponents = [family.k for family, _ in c_part.families(Cyclic) if family.p == p]
        exponents += [family.k for family, _ in c_part.families(CyclicPrimeFamily) if family.primes.contains(p)]
        modulus *= p ** max(exponents)
    return modulus


def _socle_window(socle_spec: GroupSpec, size: int) -> PrimeWindow:
    family, mult = socle_spec.families(CyclicPrimeFamily)[0]
    singles = {f.p: m.value for f, m in socle_spec.families(Cyclic)}
    primes = PrimeSet.all_except(family.primes.primes - set(singles))
    return PrimeWindow.of(primes, size, mult.value, singles)


def reduce_unbounded(
    spec: GroupSpec,
    window: int = DEFAULT_WINDOW,
    seed: int = 0,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    threshold: int = DEFAULT_THRESHOLD,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    budget: int = DEFAULT_BUDGET,
) -> ReductionTranscript:
    """
    Сведение периодической группы неограниченной экспоненты к свидетелю на цоколе.

    Шаги: отказ в случае неограниченных показателей при одном p, разложение G = G[M] ⊕ MG,
    где M изолирует ограниченные типы бесконечной кратности, переход к цоколю MG, построение
    свидетеля на цоколе и символьный подъём. Делимая часть и G[M] общие для пары.

    Args:
        spec (GroupSpec): Нормализованное описание.
        window (int): Размер окна простых.
        seed (int): Зерно.
        degree (int): Граница d.
        height (int): Граница B.
        threshold (int): Требуемое число простых.
        max_rounds (int): Число попыток поиска.
        budget (int): Бюджет перебора.

    Returns:
        ReductionTranscript: Протокол.

    Raises:
        NotSuperstableException: Если теория не суперстабильна.
        NotApplicableException: Если есть слагаемые Zhat или нет бесконечного семейства Z/p^k по простым.
    """
    spec_str = SpecParser.spec_to_str(spec)
    if stability_class(spec) == StabilityClass.NOT_SUPERSTABLE:
        raise NotSuperstableException(spec_str)
    split = split_reduced_divisible(spec)
    if not split.k_part.is_trivial:
        raise NotApplicableException(f'у группы {spec_str} есть слагаемые Zhat, нужен p-адический маршрут')
    if not split.c_part.families(CyclicPrimeFamily):
        raise NotApplicableException(f'периодическая часть группы {spec_str} ограничена')

    steps = [ReductionStep('case_a', 'при каждом простом показатели циклических слагаемых ограничены')]

    m = _bounded_modulus(split.c_part)
    parts = m_split(split.c_part, m)
    steps.append(ReductionStep(
        'm_split',
        f'M = {m}: G[M] = {SpecParser.spec_to_str(parts.torsion_part)}, MG = {SpecParser.spec_to_str(parts.complement)}',
        trivial=m == 1,
    ))

    socle_spec = socle(parts.complement)
    steps.append(ReductionStep('socle', SpecParser.spec_to_str(socle_spec), trivial=socle_spec == parts.complement))

    prime_window = _socle_window(socle_spec, window)
    witness = socle_witness_build(prime_window, seed, degree, height, threshold, max_rounds=max_rounds, budget=budget)
    steps.append(ReductionStep(
        'witness',
        f'окно из {len(prime_window.window)} простых, минимум ненулевых значений '
        f'{witness.certificate.min_nonvanishing} при пороге {threshold}',
    ))
    steps.append(ReductionStep('lift', LIFT_NOTE))
    logger.info('%s reduced with M = %s', spec_str, m)

    return ReductionTranscript(
        spec=spec,
        m=m,
        torsion_part=parts.torsion_part,
        reduced_part=parts.complement,
        socle=socle_spec,
        shared=direct_sum(parts.torsion_part, split.d_part),
        witness=witness,
        steps=tuple(steps),
        lift_note=LIFT_NOTE,
    )


def case_b_split(spec: GroupSpec) -> CaseBSplit:
    """
    Разложение G = A ⊕ B для свидетеля на цоколе: A — циклическая периодическая часть,
    B — слагаемые Zhat и делимая часть.

    Args:
        spec (GroupSpec): Нормализованное описание.

    Returns:
        CaseBSplit: Части A, B и прочтение определения C_ℓ.
    """
    split = split_reduced_divisible(spec)
    return CaseBSplit(split.c_part, normalize(split.k_part.entries + split.d_part.entries), CASE_B_NOTE)
