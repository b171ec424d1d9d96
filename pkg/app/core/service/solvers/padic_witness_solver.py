import logging
from fractions import Fraction
from random import Random
from typing import Dict, List, Sequence, Tuple, Union

from core.domain.entities.group_spec import GroupSpec, PAdicComplete, PAdicPrimeFamily
from core.domain.entities.padic import PAdicLazy, Valuation
from core.domain.entities.witness import (
    Cor2Assembly,
    Cor3Assembly,
    GridElement,
    GridMonomial,
    GridShape,
    GridShift,
    HeightProbe,
    PropInclEntry,
    WitnessPairDescriptor,
)
from core.domain.exceptions.numbers import NonUnitException, PrecisionInsufficientException, PrecisionMismatchException
from core.domain.exceptions.witnesses import (
    CertificateFailedException,
    DuplicatePrimeException,
    EmptyWitnessException,
    InvalidRankException,
    NoKPartException,
    NonCanonicalException,
    NotApplicableException,
)
from core.service.parsers.spec_parser import SpecParser
from core.service.solvers.group_spec_solver import split_reduced_divisible
from core.service.solvers.padic_solver import (
    DEFAULT_BUDGET,
    DEFAULT_DEGREE,
    DEFAULT_HEIGHT,
    DEFAULT_PRECISION,
    embed_rational,
    find_vanishing_combinations,
    independence_certificate,
    valuation_of,
)

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 3
DEFAULT_SAMPLES = 100
DEFAULT_PROP_INCL_BOUND = 5
DEFAULT_WINDOW = 50

COR2_RATIONALE = (
    'изоморфизм H_1 ≅ H_2 сохранял бы p_j-примарные компоненты; иначе ненулевой элемент H_{j,2} '
    'имел бы бесконечную p_j-высоту, что невозможно в редуцированной группе'
)
COR3_RATIONALE = (
    'части C и D общие; изоморфизм K_0 ⊕ C ⊕ D ≅ K_1 ⊕ C ⊕ D индуцирует изоморфизм факторов по '
    'периодической части и делимой оболочке, то есть K_0 ≅ K_1, что противоречит свидетелям на части K'
)


def build_padic_witness(
    p: int,
    k: int,
    seed: int = 0,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    precision: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_BUDGET,
    retries: int = DEFAULT_RETRIES,
) -> WitnessPairDescriptor:
    """
    Пара оболочек H₁ = E(K₁), H₂ = E(K₂) в (Zhat(p))^k.

    γ₁, γ₂ берутся псевдослучайными единицами по зерну; если сертификат независимости не
    проходит, зерно увеличивается на единицу (не более retries попыток).

    Args:
        p (int): Простое число.
        k (int): Ранг, k ≥ 1.
        seed (int): Начальное зерно.
        degree (int): Граница d сертификата.
        height (int): Граница B сертификата.
        precision (int): Точность N.
        budget (int): Бюджет перебора.
        retries (int): Число попыток.

    Returns:
        WitnessPairDescriptor: Описание пары.

    Raises:
        InvalidRankException: Если k < 1.
        CertificateFailedException: Если ни одно зерно не дало сертификата.
        BudgetExceededException: Если перебор больше бюджета.
    """
    if k < 1:
        raise InvalidRankException(k)
    seeds = tuple(seed + attempt for attempt in range(retries))
    for current in seeds:
        gamma1 = PAdicLazy.random(p, current, 'gamma1')
        gamma2 = PAdicLazy.random(p, current, 'gamma2')
        certificate = independence_certificate(gamma1, gamma2, degree, height, precision, budget, current)
        if certificate.passed:
            logger.info('p=%s k=%s: certificate passed with seed %s', p, k, current)
            return WitnessPairDescriptor(p, k, gamma1, gamma2, precision, current, certificate)
        logger.warning('p=%s seed=%s: relation %s found, reseeding', p, current, certificate.relation)
    raise CertificateFailedException(p, seeds)


def _check_element(x: GridElement, w: WitnessPairDescriptor) -> None:
    if x.p != w.p:
        raise PrecisionMismatchException((x.p,), (w.p,))
    for monomial in x.monomials:
        if monomial.s > w.k:
            raise NonCanonicalException(str(monomial))


def coordinate_sums(x: GridElement, w: WitnessPairDescriptor) -> List[int]:
    """
    Вычеты Σ a·γ₁^i·γ₂^j по модулю p^N для каждой координаты s = 1..k (без множителя p^{-t}).
    """
    modulus = w.p ** w.precision
    x1, x2 = w.gamma1.truncate(w.precision), w.gamma2.truncate(w.precision)
    sums = [0] * w.k
    for monomial, c in x.coefficients:
        value = embed_rational(c, w.p, w.precision).residue
        sums[monomial.s - 1] += value * pow(x1, monomial.i, modulus) * pow(x2, monomial.j, modulus)
    return [s % modulus for s in sums]


def grid_membership(x: GridElement, which: GridShape, w: WitnessPairDescriptor) -> bool:
    """
    Принадлежность элемента оболочке H₁ или H₂ при точности N.

    Элемент p^{-t}·Σ a·γ₁^i·γ₂^j·e_s лежит в оболочке, если его мономы лежат на сетке и
    каждая координатная сумма делится на p^t. Ответ относителен сертификату: единственность
    представления гарантирована лишь для соотношений в пределах (d, B).

    Args:
        x (GridElement): Элемент.
        which (GridShape): H1 или H2.
        w (WitnessPairDescriptor): Свидетель.

    Returns:
        bool: Признак принадлежности.

    Raises:
        PrecisionInsufficientException: Если t ≥ N.
    """
    _check_element(x, w)
    grid = w.grid(which)
    if not all(grid.contains(m.i, m.j) for m in x.monomials):
        return False
    if x.t == 0:
        return True
    if x.t >= w.precision:
        raise PrecisionInsufficientException(x.t, w.precision)
    return all(valuation_of(s, w.p, w.precision).at_least(x.t) for s in coordinate_sums(x, w))


Alpha = Union[GridShift, PAdicLazy, Fraction, int]


def apply_sigma(alpha: Alpha, x: GridElement, w: WitnessPairDescriptor) -> GridElement:
    """
    Умножение на единицу α: сдвиг сетки для γ₁, γ₂ и их мономов, масштабирование для рациональных единиц.

    Args:
        alpha (Alpha): GridShift, w.gamma1, w.gamma2 или рациональная единица Z_(p).
        x (GridElement): Элемент.
        w (WitnessPairDescriptor): Свидетель.

    Returns:
        GridElement: α·x.

    Raises:
        NonUnitException: Если рациональное α не единица.
        NotApplicableException: Если α — произвольное p-адическое число.
    """
    _check_element(x, w)
    if alpha is w.gamma1:
        alpha = GridShift(1, 0)
    elif alpha is w.gamma2:
        alpha = GridShift(0, 1)
    if isinstance(alpha, PAdicLazy):
        raise NotApplicableException(f'умножение на {alpha.label} не выражается на сетке мономов')

    if isinstance(alpha, GridShift):
        coefficients = {m.shifted(alpha.di, alpha.dj): c for m, c in x.coefficients}
        return GridElement.make(x.p, x.t, coefficients)

    alpha = Fraction(alpha)
    if alpha.numerator % x.p == 0 or alpha.denominator % x.p == 0:
        raise NonUnitException(alpha.numerator, x.p)
    return GridElement.make(x.p, x.t, {m: c * alpha for m, c in x.coefficients})


def add(first: GridElement, second: GridElement) -> GridElement:
    if first.p != second.p:
        raise PrecisionMismatchException((first.p,), (second.p,))
    t = max(first.t, second.t)
    coefficients: Dict[GridMonomial, Fraction] = {}
    for x in (first, second):
        factor = first.p ** (t - x.t)
        for m, c in x.coefficients:
            coefficients[m] = coefficients.get(m, Fraction(0)) + c * factor
    return GridElement.make(first.p, t, coefficients)


def divide_by_p_power(x: GridElement, e: int) -> GridElement:
    return GridElement.make(x.p, x.t + e, x.as_dict())


def p_height(x: GridElement, w: WitnessPairDescriptor) -> Valuation:
    """
    p-высота элемента в (Zhat(p))^k при точности N: min_s v_p(x_s).

    Args:
        x (GridElement): Элемент оболочки.
        w (WitnessPairDescriptor): Свидетель.

    Returns:
        Valuation: Точная высота или нижняя граница N - t.
    """
    _check_element(x, w)
    valuations = [valuation_of(s, w.p, w.precision) for s in coordinate_sums(x, w)]
    exact = [v.value for v in valuations if v.exact]
    if not exact:
        return Valuation(w.precision - x.t, False)
    return Valuation(min(exact) - x.t, True)


def padic_prop_incl_check(
    w: WitnessPairDescriptor,
    m_max: int = DEFAULT_PROP_INCL_BOUND,
    height: int = DEFAULT_HEIGHT,
) -> List[PropInclEntry]:
    """
    Ограниченная проверка того, что γ₁γ₂^{m+1} не выражается через 1, γ₁, γ₁γ₂, ..., γ₁γ₂^m.

    Для каждого m ищутся целые c с |c| ≤ height, c_target ≠ 0 и содержанием, не кратным p,
    у которых комбинация обнуляется по модулю p^N.

    Args:
        w (WitnessPairDescriptor): Свидетель.
        m_max (int): Наибольшее m.
        height (int): Граница коэффициентов.

    Returns:
        List[PropInclEntry]: Результат для m = 0..m_max.
    """
    modulus = w.p ** w.precision
    x1, x2 = w.gamma1.truncate(w.precision), w.gamma2.truncate(w.precision)
    entries = []
    for m in range(m_max + 1):
        values = [1, x1] + [x1 * pow(x2, j, modulus) for j in range(1, m + 1)]
        values.append(x1 * pow(x2, m + 1, modulus))
        relations = [
            c for c in find_vanishing_combinations(values, height, modulus)
            if c[-1] and any(a % w.p for a in c)
        ]
        logger.debug('p=%s m=%s: %s relations', w.p, m, len(relations))
        entries.append(PropInclEntry(m, not relations, len(relations)))
    return entries


def _random_grid_point(rng: Random, which: GridShape, max_degree: int) -> Tuple[int, int]:
    if which == GridShape.K2 and rng.random() < 0.2:
        return (0, 0)
    low = 1 if which == GridShape.K2 else 0
    return (rng.randint(low, max_degree), rng.randint(0, max_degree))


def sample_members(
    w: WitnessPairDescriptor,
    which: GridShape,
    count: int = DEFAULT_SAMPLES,
    seed: int = 0,
    max_degree: int = 3,
    max_t: int = 3,
) -> List[GridElement]:
    """
    Псевдослучайные элементы оболочки, в том числе со знаменателем p^t.

    Для t > 0 к координате s добавляется константа c₀ ≡ -Σ по модулю p^t на мономе (0, 0, s),
    который лежит в обеих сетках.

    Args:
        w (WitnessPairDescriptor): Свидетель.
        which (GridShape): H1 или H2.
        count (int): Число элементов.
        seed (int): Зерно.
        max_degree (int): Наибольшая степень γ₁, γ₂ в мономах.
        max_t (int): Наибольший показатель знаменателя.

    Returns:
        List[GridElement]: Элементы оболочки.
    """
    rng = Random(f'{seed}:{w.p}:{which.value}')
    bound = w.p ** 2
    members = []
    while len(members) < count:
        coefficients: Dict[GridMonomial, Fraction] = {}
        for _ in range(rng.randint(1, 4)):
            i, j = _random_grid_point(rng, which, max_degree)
            denominator = rng.choice([d for d in range(1, 8) if d % w.p])
            numerator = rng.choice([c for c in range(-bound, bound + 1) if c])
            monomial = GridMonomial(i, j, rng.randint(1, w.k))
            coefficients[monomial] = coefficients.get(monomial, Fraction(0)) + Fraction(numerator, denominator)

        t = rng.randint(0, min(max_t, w.precision - 1))
        if t:
            draft = GridElement.make(w.p, 0, coefficients)
            for s, value in enumerate(coordinate_sums(draft, w), start=1):
                correction = -value % w.p ** t
                constant = GridMonomial(0, 0, s)
                coefficients[constant] = coefficients.get(constant, Fraction(0)) + correction
        x = GridElement.make(w.p, t, coefficients)
        if x.coefficients:
            members.append(x)
    return members


def height_probe(w: WitnessPairDescriptor, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> HeightProbe:
    heights = [p_height(x, w) for x in sample_members(w, GridShape.K2, samples, seed)]
    return HeightProbe(
        p=w.p,
        samples=len(heights),
        max_height=max((h.value for h in heights), default=0),
        all_finite=all(h.exact for h in heights),
    )


def assemble_cor2(
    pairs: Sequence[Tuple[int, int]],
    seed: int = 0,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    precision: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_BUDGET,
    samples: int = DEFAULT_SAMPLES,
) -> Cor2Assembly:
    """
    Свидетели для ⊕ (Zhat(p_i))^{k_i}: покомпонентные пары и пробы конечности высот.

    Args:
        pairs (Sequence[Tuple[int, int]]): Пары (p_i, k_i) с различными p_i.
        seed (int): Зерно.
        degree (int): Граница d.
        height (int): Граница B.
        precision (int): Точность N.
        budget (int): Бюджет перебора.
        samples (int): Число элементов в пробе высот.

    Returns:
        Cor2Assembly: Свидетели.

    Raises:
        EmptyWitnessException: Если список пуст.
        DuplicatePrimeException: Если простое повторяется.
    """
    if not pairs:
        raise EmptyWitnessException()
    seen = set()
    for p, _ in pairs:
        if p in seen:
            raise DuplicatePrimeException(p)
        seen.add(p)

    components = tuple(build_padic_witness(p, k, seed, degree, height, precision, budget) for p, k in pairs)
    probes = tuple(height_probe(w, samples, seed) for w in components)
    return Cor2Assembly(components, probes, COR2_RATIONALE)


def assemble_cor3(
    spec: GroupSpec,
    seed: int = 0,
    window: int = DEFAULT_WINDOW,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    precision: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_BUDGET,
    samples: int = DEFAULT_SAMPLES,
) -> Cor3Assembly:
    """
    Пара K₀ ⊕ C ⊕ D, K₁ ⊕ C ⊕ D: свидетели на части K, части C и D общие.

    Семейство Zhat по бесконечному множеству простых заменяется первыми window простыми.

    Args:
        spec (GroupSpec): Нормализованное описание.
        seed (int): Зерно.
        window (int): Число простых для бесконечного семейства.
        degree (int): Граница d.
        height (int): Граница B.
        precision (int): Точность N.
        budget (int): Бюджет перебора.
        samples (int): Число элементов в пробе высот.

    Returns:
        Cor3Assembly: Описание пары.

    Raises:
        NoKPartException: Если в группе нет слагаемых Zhat(p).
        NotApplicableException: Если кратность слагаемого Zhat бесконечна.
    """
    split = split_reduced_divisible(spec)
    if split.k_part.is_trivial:
        raise NoKPartException(SpecParser.spec_to_str(spec))

    pairs: List[Tuple[int, int]] = []
    windowed = False
    for family, mult in split.k_part:
        if mult.infinite:
            raise NotApplicableException(f'кратность {mult} слагаемого {SpecParser.family_to_str(family)} бесконечна')
        if isinstance(family, PAdicComplete):
            pairs.append((family.p, mult.value))
        elif isinstance(family, PAdicPrimeFamily):
            windowed = windowed or family.primes.cofinite
            pairs.extend((p, mult.value) for p in family.primes.first(window))
    pairs.sort()
    logger.info('K part components: %s', pairs)

    k_witness = assemble_cor2(pairs, seed, degree, height, precision, budget, samples)
    return Cor3Assembly(split.k_part, split.c_part, split.d_part, k_witness, windowed, COR3_RATIONALE)
