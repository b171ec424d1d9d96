from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod
from typing import Iterator, Tuple

from core.domain.exceptions.groups import InvalidFactorException

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """
    Явная конечная абелева группа Z/n_1 ⊕ ... ⊕ Z/n_r.

    Элементы являются кортежами (x_1, ..., x_r), 0 ≤ x_j < n_j, сложение покомпонентное.

    Attributes:
        factors (Tuple[int, ...]): Порядки циклических множителей, каждый не меньше 2.
    """

    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(self.factors))
        for factor in self.factors:
            if factor < 2:
                raise InvalidFactorException(factor)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors) if self.factors else 1

    @property
    def zero(self) -> Element:
        return tuple(0 for _ in self.factors)

    def elements(self) -> Iterator[Element]:
        return product(*(range(factor) for factor in self.factors))

    def contains(self, x: Element) -> bool:
        return len(x) == len(self.factors) and all(0 <= a < n for a, n in zip(x, self.factors))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def scale(self, c: int, x: Element) -> Element:
        return tuple((c * a) % n for a, n in zip(x, self.factors))

    def element_order(self, x: Element) -> int:
        result = 1
        for a, n in zip(x, self.factors):
            result = lcm(result, n // gcd(a, n))
        return result


@dataclass(frozen=True)
class IntMatrix:
    """
    Целочисленная матрица произвольной точности.

    Attributes:
        rows (Tuple[Tuple[int, ...], ...]): Строки матрицы.
    """

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        if not rows or not rows[0] or any(len(row) != len(rows[0]) for row in rows):
            raise InvalidFactorException(self.rows)
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values) -> 'IntMatrix':
        values = list(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(len(values))) for i in range(len(values))))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        columns = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in self.rows))

    def is_diagonal(self) -> bool:
        return all(a == 0 for i, row in enumerate(self.rows) for j, a in enumerate(row) if i != j)


@dataclass(frozen=True)
class SmithForm:
    """
    Нормальная форма Смита U·A·V = D.

    Attributes:
        invariant_factors (Tuple[int, ...]): Диагональные элементы d_i > 1, d_1 | d_2 | ...
        free_rank (int): Ранг свободной части коядра Z^rows / A·Z^cols.
        diagonal (IntMatrix): Матрица D.
        u (IntMatrix): Унимодулярное преобразование строк.
        v (IntMatrix): Унимодулярное преобразование столбцов.
    """

    invariant_factors: Tuple[int, ...]
    free_rank: int
    diagonal: IntMatrix
    u: IntMatrix
    v: IntMatrix
