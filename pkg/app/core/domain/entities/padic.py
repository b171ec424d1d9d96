import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from sympy import Matrix

from core.domain.entities.polynomial import IntPolynomial2
from core.domain.entities.prime import Prime
from core.domain.exceptions.numbers import NonUnitException, PrecisionMismatchException
from core.domain.exceptions.witnesses import InvalidConfigException


@dataclass(frozen=True)
class PAdicApprox:
    """
    Приближение целого p-адического числа по модулю p^N.

    Attributes:
        p (int): Простое число.
        precision (int): Точность N ≥ 1.
        residue (int): Вычет, 0 ≤ residue < p^N.
    """

    p: int
    precision: int
    residue: int

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        if self.precision < 1:
            raise InvalidConfigException('precision', self.precision)
        if not 0 <= self.residue < self.modulus:
            raise InvalidConfigException('residue', self.residue)

    @classmethod
    def of(cls, value: int, p: int, precision: int) -> 'PAdicApprox':
        return cls(p, precision, value % p ** precision)

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def check_same_ring(self, other: 'PAdicApprox') -> None:
        if (self.p, self.precision) != (other.p, other.precision):
            raise PrecisionMismatchException((self.p, self.precision), (other.p, other.precision))


@dataclass(frozen=True)
class Valuation:
    """
    p-адическое нормирование при точности N: точное значение или нижняя граница N.

    Attributes:
        value (int): Значение или граница.
        exact (bool): Признак точного значения.
    """

    value: int
    exact: bool

    def at_least(self, bound: int) -> bool:
        return self.value >= bound

    def __str__(self) -> str:
        return str(self.value) if self.exact else f'>={self.value}'


class PAdicLazy:
    """
    Ленивое целое p-адическое число: вычеты по модулю p^N вычисляются по запросу и кэшируются.

    Кэш защищён блокировкой, поэтому параллельные читатели видят согласованный префикс.
    Согласованность truncate(x, M) mod p^N = truncate(x, N) обеспечивается построением.

    Attributes:
        p (int): Простое число.
        label (str): Описание числа для отчётов.
    """

    def __init__(self, p: int, approximate: Callable[[int], int], label: str):
        self.p = Prime(p)
        self.label = label
        self._approximate = approximate
        self._cache: Dict[int, int] = {}
        self._lock = threading.Lock()

    def truncate(self, precision: int) -> int:
        with self._lock:
            if precision not in self._cache:
                self._cache[precision] = self._approximate(precision) % self.p ** precision
            return self._cache[precision]

    def approx(self, precision: int) -> PAdicApprox:
        return PAdicApprox(self.p, precision, self.truncate(precision))

    def is_unit(self) -> bool:
        return self.truncate(1) != 0

    def __repr__(self) -> str:
        return f'PAdicLazy({self.p}, {self.label!r})'

    @classmethod
    def random(cls, p: int, seed: int, label: str, unit: bool = True) -> 'PAdicLazy':
        """
        Детерминированное псевдослучайное число: цифры берутся из random.Random с зерном (seed, p, label).

        Args:
            p (int): Простое число.
            seed (int): Зерно.
            label (str): Имя числа, входит в зерно.
            unit (bool): Начинать с ненулевой цифры.

        Returns:
            PAdicLazy: Число.
        """
        rng = random.Random(f'{seed}:{p}:{label}')
        digits: List[int] = []

        def approximate(precision: int) -> int:
            while len(digits) < precision:
                low = 1 if unit and not digits else 0
                digits.append(rng.randrange(low, p))
            return sum(digit * p ** i for i, digit in enumerate(digits[:precision]))

        return cls(p, approximate, f'random(seed={seed}, {label})')

    @classmethod
    def from_rational(cls, value: Fraction, p: int) -> 'PAdicLazy':
        value = Fraction(value)
        if value.denominator % p == 0:
            raise NonUnitException(value.denominator, p)

        def approximate(precision: int) -> int:
            modulus = p ** precision
            return value.numerator * pow(value.denominator, -1, modulus) % modulus

        return cls(p, approximate, str(value))

    @classmethod
    def product(cls, first: 'PAdicLazy', second: 'PAdicLazy') -> 'PAdicLazy':
        if first.p != second.p:
            raise PrecisionMismatchException((first.p,), (second.p,))
        return cls(
            first.p,
            lambda precision: first.truncate(precision) * second.truncate(precision),
            f'({first.label})*({second.label})',
        )

    @classmethod
    def power(cls, base: 'PAdicLazy', exponent: int) -> 'PAdicLazy':
        return cls(
            base.p,
            lambda precision: pow(base.truncate(precision), exponent, base.p ** precision),
            f'({base.label})^{exponent}',
        )

    @classmethod
    def sum(cls, first: 'PAdicLazy', second: 'PAdicLazy') -> 'PAdicLazy':
        if first.p != second.p:
            raise PrecisionMismatchException((first.p,), (second.p,))
        return cls(
            first.p,
            lambda precision: first.truncate(precision) + second.truncate(precision),
            f'({first.label})+({second.label})',
        )


@dataclass(frozen=True)
class MatrixModPk:
    """
    Квадратная матрица k×k над Z/p^N.

    Attributes:
        p (int): Простое число.
        precision (int): Точность N.
        rows (Tuple[Tuple[int, ...], ...]): Строки, элементы приведены по модулю p^N.
    """

    p: int
    precision: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        size = len(self.rows)
        if size == 0 or any(len(row) != size for row in self.rows):
            raise InvalidConfigException('rows', self.rows)
        modulus = self.p ** self.precision
        object.__setattr__(self, 'rows', tuple(tuple(a % modulus for a in row) for row in self.rows))

    @classmethod
    def identity(cls, p: int, precision: int, size: int) -> 'MatrixModPk':
        return cls(p, precision, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def reduce(self, precision: int) -> 'MatrixModPk':
        return MatrixModPk(self.p, precision, self.rows)

    def tower(self) -> List['MatrixModPk']:
        return [self.reduce(n) for n in range(1, self.precision + 1)]

    def __matmul__(self, other: 'MatrixModPk') -> 'MatrixModPk':
        if (self.p, self.precision) != (other.p, other.precision):
            raise PrecisionMismatchException((self.p, self.precision), (other.p, other.precision))
        product = Matrix(self.rows) * Matrix(other.rows)
        return MatrixModPk(self.p, self.precision, tuple(tuple(int(a) for a in product.row(i)) for i in range(self.size)))

    def det(self) -> int:
        return int(Matrix(self.rows).det()) % self.modulus


@dataclass(frozen=True)
class Certificate:
    """
    Сертификат независимости: нет ненулевого q с box-степенью ≤ d и высотой ≤ B,
    у которого v_p(q(γ₁, γ₂)) ≥ N.

    Attributes:
        p (int): Простое число.
        seed (int): Зерно, из которого получены γ₁, γ₂.
        degree (int): Граница степени d по каждой переменной.
        height (int): Граница высоты B.
        precision (int): Точность N.
        passed (bool): Вердикт.
        relation (Optional[IntPolynomial2]): Найденное соотношение при passed = False.
        candidates (int): Размер пространства перебора (2B+1)^{(d+1)²}.
    """

    p: int
    seed: int
    degree: int
    height: int
    precision: int
    passed: bool
    relation: Optional[IntPolynomial2]
    candidates: int
