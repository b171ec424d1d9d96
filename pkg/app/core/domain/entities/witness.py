from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Tuple

from core.domain.entities.group_spec import GroupSpec
from core.domain.entities.padic import Certificate, PAdicLazy
from core.domain.entities.prime import Prime
from core.domain.exceptions.witnesses import InvalidRankException, NonCanonicalException


class GridShape(Enum):
    """
    Сетки мономов γ₁^i·γ₂^j: K1 содержит все (i, j), K2 только i ≥ 1 и (0, 0).
    """

    K1 = 'H1'
    K2 = 'H2'

    def contains(self, i: int, j: int) -> bool:
        return self == GridShape.K1 or i >= 1 or (i, j) == (0, 0)


@dataclass(frozen=True, order=True)
class GridMonomial:
    """
    Моном γ₁^i·γ₂^j·e_s.

    Attributes:
        i (int): Степень γ₁.
        j (int): Степень γ₂.
        s (int): Номер координаты, 1 ≤ s ≤ k.
    """

    i: int
    j: int
    s: int

    def __post_init__(self):
        if self.i < 0 or self.j < 0 or self.s < 1:
            raise NonCanonicalException(f'({self.i}, {self.j}, {self.s})')

    def shifted(self, di: int, dj: int) -> 'GridMonomial':
        return GridMonomial(self.i + di, self.j + dj, self.s)


@dataclass(frozen=True)
class GridShift:
    """
    Умножение на моном γ₁^di·γ₂^dj.

    Attributes:
        di (int): Сдвиг степени γ₁.
        dj (int): Сдвиг степени γ₂.
    """

    di: int
    dj: int


GAMMA1 = GridShift(1, 0)
GAMMA2 = GridShift(0, 1)
IDENTITY = GridShift(0, 0)


@dataclass(frozen=True)
class GridElement:
    """
    Элемент оболочки p^{-t}·Σ a_m·m над мономами сетки, a_m ∈ Z_(p).

    Каноническая форма: мономы отсортированы, нулевых коэффициентов нет, при t > 0 не все
    коэффициенты делятся на p.

    Attributes:
        p (int): Простое число.
        t (int): Показатель знаменателя.
        coefficients (Tuple[Tuple[GridMonomial, Fraction], ...]): Коэффициенты при мономах.
    """

    p: int
    t: int
    coefficients: Tuple[Tuple[GridMonomial, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        if self.t < 0:
            raise NonCanonicalException(f't = {self.t}')
        for _, c in self.coefficients:
            if Fraction(c) == 0 or Fraction(c).denominator % self.p == 0:
                raise NonCanonicalException(str(c))
        monomials = [m for m, _ in self.coefficients]
        if monomials != sorted(set(monomials)):
            raise NonCanonicalException(str(monomials))
        if self.t > 0 and self.coefficients and all(Fraction(c).numerator % self.p == 0 for _, c in self.coefficients):
            raise NonCanonicalException(f'p^{self.t} сокращается')

    @classmethod
    def make(cls, p: int, t: int, coefficients: Dict[GridMonomial, Fraction]) -> 'GridElement':
        """
        Каноническая форма: слияние мономов, удаление нулей и сокращение степени p.
        """
        merged: Dict[GridMonomial, Fraction] = {}
        for monomial, c in dict(coefficients).items():
            merged[monomial] = merged.get(monomial, Fraction(0)) + Fraction(c)
        merged = {m: c for m, c in merged.items() if c != 0}
        if not merged:
            t = 0
        while t > 0 and all(c.numerator % p == 0 for c in merged.values()):
            merged = {m: c / p for m, c in merged.items()}
            t -= 1
        return cls(p, t, tuple(sorted(merged.items())))

    @property
    def monomials(self) -> Tuple[GridMonomial, ...]:
        return tuple(m for m, _ in self.coefficients)

    def as_dict(self) -> Dict[GridMonomial, Fraction]:
        return dict(self.coefficients)


@dataclass(frozen=True)
class WitnessPairDescriptor:
    """
    Пара H₁ = E(K₁), H₂ = E(K₂) в (Zhat(p))^k с сертифицированными γ₁, γ₂.

    Attributes:
        p (int): Простое число.
        k (int): Ранг, k ≥ 1.
        gamma1 (PAdicLazy): Первая единица.
        gamma2 (PAdicLazy): Вторая единица.
        precision (int): Точность N.
        seed (int): Зерно, при котором получен сертификат.
        certificate (Certificate): Сертификат независимости.
        h1_grid (GridShape): Сетка H₁.
        h2_grid (GridShape): Сетка H₂.
    """

    p: int
    k: int
    gamma1: PAdicLazy
    gamma2: PAdicLazy
    precision: int
    seed: int
    certificate: Certificate
    h1_grid: GridShape = GridShape.K1
    h2_grid: GridShape = GridShape.K2

    def __post_init__(self):
        if self.k < 1:
            raise InvalidRankException(self.k)

    def grid(self, which: GridShape) -> GridShape:
        return self.h1_grid if which == GridShape.K1 else self.h2_grid


@dataclass(frozen=True)
class HeightProbe:
    """
    Проба конечности p-высоты ненулевых элементов H₂.

    Attributes:
        p (int): Простое число.
        samples (int): Число проверенных элементов.
        max_height (int): Наибольшая найденная высота.
        all_finite (bool): Все высоты точны и меньше N.
    """

    p: int
    samples: int
    max_height: int
    all_finite: bool


@dataclass(frozen=True)
class PropInclEntry:
    """
    Результат проверки для одного m: целевой моном не выражается через младшие.

    Attributes:
        m (int): Номер шага.
        passed (bool): Соотношение не найдено (или найдено на менее чем threshold простых).
        detail (int): Число найденных соотношений либо минимальное число ненулевых значений.
    """

    m: int
    passed: bool
    detail: int


@dataclass(frozen=True)
class Cor2Assembly:
    """
    Свидетели для прямой суммы ⊕ (Zhat(p_i))^{k_i}.

    Attributes:
        components (Tuple[WitnessPairDescriptor, ...]): Свидетели компонент.
        height_probes (Tuple[HeightProbe, ...]): Пробы конечности высот.
        rationale (str): Обоснование неизоморфизма.
    """

    components: Tuple[WitnessPairDescriptor, ...]
    height_probes: Tuple[HeightProbe, ...]
    rationale: str


@dataclass(frozen=True)
class Cor3Assembly:
    """
    Пара K₀ ⊕ C ⊕ D, K₁ ⊕ C ⊕ D с общими частями C и D.

    Attributes:
        k_part (GroupSpec): Часть K.
        c_part (GroupSpec): Часть C.
        d_part (GroupSpec): Часть D.
        k_witness (Cor2Assembly): Свидетели на части K.
        windowed (bool): Семейство Zhat по простым заменено окном первых простых.
        rationale (str): Обоснование неизоморфизма.
    """

    k_part: GroupSpec
    c_part: GroupSpec
    d_part: GroupSpec
    k_witness: Cor2Assembly
    windowed: bool
    rationale: str
