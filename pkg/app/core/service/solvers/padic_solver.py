import logging
from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple, Union

from sympy import Matrix, multiplicity

from core.domain.entities.padic import Certificate, MatrixModPk, PAdicApprox, PAdicLazy, Valuation
from core.domain.entities.polynomial import IntPolynomial2
from core.domain.exceptions.numbers import (
    BudgetExceededException,
    IncompatibleSequenceException,
    NonUnitException,
    PrecisionMismatchException,
    SingularModPException,
)
from core.domain.exceptions.witnesses import InvalidConfigException

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 40
DEFAULT_DEGREE = 2
DEFAULT_HEIGHT = 2
DEFAULT_BUDGET = 10 ** 7


def valuation_of(residue: int, p: int, precision: int) -> Valuation:
    """
    Нормирование вычета по модулю p^N.

    Args:
        residue (int): Вычет.
        p (int): Простое число.
        precision (int): Точность N.

    Returns:
        Valuation: Точное значение при v < N, иначе граница N.
    """
    residue %= p ** precision
    if residue == 0:
        return Valuation(precision, False)
    return Valuation(multiplicity(p, residue), True)


def padic_add(first: PAdicApprox, second: PAdicApprox) -> PAdicApprox:
    first.check_same_ring(second)
    return PAdicApprox.of(first.residue + second.residue, first.p, first.precision)


def padic_mul(first: PAdicApprox, second: PAdicApprox) -> PAdicApprox:
    first.check_same_ring(second)
    return PAdicApprox.of(first.residue * second.residue, first.p, first.precision)


def padic_neg(x: PAdicApprox) -> PAdicApprox:
    return PAdicApprox.of(-x.residue, x.p, x.precision)


def padic_inv(x: PAdicApprox) -> PAdicApprox:
    """
    Обратный элемент единицы кольца Z/p^N.

    Args:
        x (PAdicApprox): Единица.

    Returns:
        PAdicApprox: x^{-1} по модулю p^N.

    Raises:
        NonUnitException: Если p делит вычет.
    """
    if x.residue % x.p == 0:
        raise NonUnitException(x.residue, x.p)
    return PAdicApprox(x.p, x.precision, pow(x.residue, -1, x.modulus))


def padic_val(x: PAdicApprox) -> Valuation:
    return valuation_of(x.residue, x.p, x.precision)


OPERATIONS = {
    'add': padic_add,
    'mul': padic_mul,
    'neg': padic_neg,
    'inv': padic_inv,
    'val': padic_val,
}


def padic_arith(op: str, *args: PAdicApprox) -> Union[PAdicApprox, Valuation]:
    """
    Арифметика приближений по имени операции: add, mul, neg, inv, val.

    Args:
        op (str): Имя операции.
        *args (PAdicApprox): Аргументы с одинаковыми (p, N).

    Returns:
        Union[PAdicApprox, Valuation]: Результат.
    """
    if op not in OPERATIONS:
        raise InvalidConfigException('op', op)
    return OPERATIONS[op](*args)


def embed_rational(x: Fraction, p: int, precision: int) -> PAdicApprox:
    """
    Образ рационального числа с знаменателем, взаимно простым с p, в Z/p^N.

    Args:
        x (Fraction): Число из Z_(p).
        p (int): Простое число.
        precision (int): Точность N.

    Returns:
        PAdicApprox: Приближение.
    """
    return PAdicLazy.from_rational(x, p).approx(precision)


def divisible_in_localization(x: Fraction, p: int, k: int) -> bool:
    """
    Делимость на p^k в Z_(p): x = p^k·y с y ∈ Z_(p).

    Args:
        x (Fraction): Число с знаменателем, взаимно простым с p.
        p (int): Простое число.
        k (int): Показатель.

    Returns:
        bool: Признак делимости.
    """
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonUnitException(x.denominator, p)
    return x == 0 or multiplicity(p, abs(x.numerator)) >= k


def matrix_limit_inverse(sequence: Sequence[MatrixModPk]) -> List[MatrixModPk]:
    """
    Обратные матрицы B_n для согласованной последовательности A_n над Z/p^n, n = 1..N.

    Args:
        sequence (Sequence[MatrixModPk]): A_1, ..., A_N, где A_n задана по модулю p^n.

    Returns:
        List[MatrixModPk]: B_1, ..., B_N с A_n·B_n = B_n·A_n = I, согласованные при редукции.

    Raises:
        SingularModPException: Если det A_1 делится на p.
        IncompatibleSequenceException: Если A_{n+1} не редуцируется в A_n.
    """
    if not sequence:
        raise InvalidConfigException('sequence', '[]')
    first = sequence[0]
    for level, matrix in enumerate(sequence, start=1):
        if matrix.precision != level or matrix.p != first.p or matrix.size != first.size:
            raise PrecisionMismatchException((first.p, level), (matrix.p, matrix.precision))
    for level in range(1, len(sequence)):
        if sequence[level].reduce(level) != sequence[level - 1]:
            raise IncompatibleSequenceException(level)
    determinant = first.det()
    if determinant % first.p == 0:
        raise SingularModPException(first.p, determinant)

    inverses = []
    for matrix in sequence:
        inverse = Matrix(matrix.rows).inv_mod(matrix.modulus)
        rows = tuple(tuple(int(a) for a in inverse.row(i)) for i in range(matrix.size))
        inverses.append(MatrixModPk(matrix.p, matrix.precision, rows))
    return inverses


def find_vanishing_combinations(values: Sequence[int], height: int, modulus: int) -> List[Tuple[int, ...]]:
    """
    Все ненулевые векторы c с |c_i| ≤ height и Σ c_i·v_i ≡ 0 по модулю, встречей посередине.

    Args:
        values (Sequence[int]): Значения v_i.
        height (int): Граница модулей коэффициентов.
        modulus (int): Модуль.

    Returns:
        List[Tuple[int, ...]]: Найденные векторы коэффициентов.
    """
    values = [v % modulus for v in values]
    half = len(values) // 2
    left, right = values[:half], values[half:]
    coefficient_range = range(-height, height + 1)

    table: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for coefficients in product(coefficient_range, repeat=len(left)):
        table[sum(c * v for c, v in zip(coefficients, left)) % modulus].append(coefficients)

    found = []
    for coefficients in product(coefficient_range, repeat=len(right)):
        target = -sum(c * v for c, v in zip(coefficients, right)) % modulus
        for left_coefficients in table.get(target, ()):
            combination = left_coefficients + coefficients
            if any(combination):
                found.append(combination)
    return found


def box_monomials(degree: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(degree + 1) for j in range(degree + 1)]


def search_space_size(degree: int, height: int) -> int:
    return (2 * height + 1) ** ((degree + 1) ** 2)


def independence_certificate(
    gamma1: PAdicLazy,
    gamma2: PAdicLazy,
    degree: int = DEFAULT_DEGREE,
    height: int = DEFAULT_HEIGHT,
    precision: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    primitive_only: bool = False,
) -> Certificate:
    """
    Ограниченный сертификат алгебраической независимости γ₁, γ₂.

    Ищутся ненулевые q с 0 ≤ i, j ≤ d и |a_ij| ≤ B, у которых q(γ₁, γ₂) ≡ 0 mod p^N.
    Засчитывается любое такое q, в том числе с содержанием, кратным p. При primitive_only
    соотношения с содержанием, кратным p, пропускаются. Из найденных выбирается минимальное по
    (полная степень, число членов, высота).

    Args:
        gamma1 (PAdicLazy): Первая единица.
        gamma2 (PAdicLazy): Вторая единица.
        degree (int): Граница d.
        height (int): Граница B.
        precision (int): Точность N.
        budget (int): Допустимый размер перебора.
        seed (int): Зерно, записываемое в сертификат.
        primitive_only (bool): Учитывать только соотношения с содержанием, взаимно простым с p.

    Returns:
        Certificate: Вердикт и найденное соотношение.

    Raises:
        BudgetExceededException: Если (2B+1)^{(d+1)²} больше бюджета.
    """
    if gamma1.p != gamma2.p:
        raise PrecisionMismatchException((gamma1.p,), (gamma2.p,))
    for gamma in (gamma1, gamma2):
        if not gamma.is_unit():
            raise NonUnitException(gamma.truncate(1), gamma.p)
    size = search_space_size(degree, height)
    if size > budget:
        raise BudgetExceededException(size, budget)

    p = gamma1.p
    modulus = p ** precision
    x, y = gamma1.truncate(precision), gamma2.truncate(precision)
    monomials = box_monomials(degree)
    values = [pow(x, i, modulus) * pow(y, j, modulus) % modulus for i, j in monomials]

    relations = [
        q for q in (
            IntPolynomial2(tuple(zip(monomials, combination)))
            for combination in find_vanishing_combinations(values, height, modulus)
        )
        if not primitive_only or q.content % p
    ]
    logger.debug('p=%s d=%s B=%s N=%s: %s relations among %s candidates', p, degree, height, precision, len(relations), size)

    relation = None
    if relations:
        relation = min(relations, key=lambda q: (q.total_degree, q.terms, q.height, q.coefficients)).sign_normalized()
    return Certificate(
        p=p,
        seed=seed,
        degree=degree,
        height=height,
        precision=precision,
        passed=relation is None,
        relation=relation,
        candidates=size,
    )
