from dataclasses import dataclass
from math import gcd
from typing import Dict, Tuple

from sympy import Poly, symbols

Monomial = Tuple[int, int]

X, Y = symbols('x y')


@dataclass(frozen=True)
class IntPolynomial2:
    """
    Многочлен от двух переменных с целыми коэффициентами.

    Attributes:
        coefficients (Tuple[Tuple[Monomial, int], ...]): Пары ((i, j), a_ij) для монома x^i·y^j,
            отсортированные по мономам, без нулевых коэффициентов.
    """

    coefficients: Tuple[Tuple[Monomial, int], ...] = ()

    def __post_init__(self):
        merged: Dict[Monomial, int] = {}
        for (i, j), c in self.coefficients:
            merged[i, j] = merged.get((i, j), 0) + c
        object.__setattr__(self, 'coefficients', tuple(sorted((m, c) for m, c in merged.items() if c)))

    @classmethod
    def from_dict(cls, coefficients: Dict[Monomial, int]) -> 'IntPolynomial2':
        return cls(tuple(coefficients.items()))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.coefficients), default=0)

    @property
    def box_degree(self) -> int:
        return max((max(i, j) for (i, j), _ in self.coefficients), default=0)

    @property
    def height(self) -> int:
        return max((abs(c) for _, c in self.coefficients), default=0)

    @property
    def terms(self) -> int:
        return len(self.coefficients)

    @property
    def content(self) -> int:
        result = 0
        for _, c in self.coefficients:
            result = gcd(result, c)
        return result

    def evaluate_mod(self, x: int, y: int, modulus: int) -> int:
        return sum(c * pow(x, i, modulus) * pow(y, j, modulus) for (i, j), c in self.coefficients) % modulus

    def sign_normalized(self) -> 'IntPolynomial2':
        """
        Многочлен с положительным коэффициентом при младшем мономе (порядок: полная степень, затем степень y).
        """
        if self.is_zero:
            return self
        (_, lowest) = min(((i + j, j), c) for (i, j), c in self.coefficients)
        if lowest > 0:
            return self
        return IntPolynomial2(tuple((m, -c) for m, c in self.coefficients))

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        return str(Poly.from_dict(dict(self.coefficients), X, Y).as_expr())
