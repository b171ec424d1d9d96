from dataclasses import dataclass, field
from random import Random
from typing import Dict, Optional, Tuple

from core.domain.entities.group_spec import GroupSpec, PrimeSet
from core.domain.entities.polynomial import IntPolynomial2
from core.domain.entities.witness import GridShape
from core.domain.exceptions.witnesses import InvalidConfigException, NonCanonicalException

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class PrimeWindow:
    """
    Бесконечное множество простых S, его окно из первых W простых и ранги r_p.

    Attributes:
        primes (PrimeSet): Множество S.
        window (Tuple[int, ...]): Первые W простых из S.
        rank (int): Общий ранг r.
        overrides (Tuple[Tuple[int, int], ...]): Конечный список пар (p, r_p), отличных от r.
    """

    primes: PrimeSet
    window: Tuple[int, ...]
    rank: int = 1
    overrides: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if not self.window:
            raise InvalidConfigException('window', self.window)
        if self.rank < 1 or any(r < 1 for _, r in self.overrides):
            raise InvalidConfigException('rank', self.rank)
        for p in self.window:
            if not self.primes.contains(p):
                raise InvalidConfigException('window', p)

    @classmethod
    def of(cls, primes: PrimeSet, size: int, rank: int = 1, overrides: Dict[int, int] = None) -> 'PrimeWindow':
        return cls(primes, tuple(primes.first(size)), rank, tuple(sorted((overrides or {}).items())))

    def rank_at(self, p: int) -> int:
        return dict(self.overrides).get(p, self.rank)


@dataclass(frozen=True)
class SigmaPair:
    """
    Пара автоморфизмов (σ₁, σ₂) произведения: покоординатное умножение на единицы σ_p, τ_p.

    Вне окна скаляры выбираются детерминированно по зерну, без гарантий.

    Attributes:
        sigma (Tuple[Tuple[int, int], ...]): Пары (p, σ_p) на простых окна.
        tau (Tuple[Tuple[int, int], ...]): Пары (p, τ_p) на простых окна.
        seed (int): Зерно правила для простых вне окна.
    """

    sigma: Tuple[Tuple[int, int], ...]
    tau: Tuple[Tuple[int, int], ...]
    seed: int

    def __post_init__(self):
        for p, unit in self.sigma + self.tau:
            if unit % p == 0:
                raise NonCanonicalException(f'σ_{p} = {unit}')

    def _tail(self, p: int, name: str) -> int:
        return Random(f'{self.seed}:{p}:{name}').randrange(1, p)

    def sigma_at(self, p: int) -> int:
        known = dict(self.sigma)
        return known[p] if p in known else self._tail(p, 'sigma')

    def tau_at(self, p: int) -> int:
        known = dict(self.tau)
        return known[p] if p in known else self._tail(p, 'tau')

    def scalar_at(self, p: int, which: int) -> int:
        return self.sigma_at(p) if which == 1 else self.tau_at(p)


@dataclass(frozen=True)
class AvoidanceCertificate:
    """
    Итог поиска пары: каждый ненулевой q с box-степенью ≤ d и высотой ≤ B не обнуляется
    как минимум на threshold простых окна.

    Attributes:
        degree (int): Граница d.
        height (int): Граница B.
        threshold (int): Требуемое число простых.
        window (Tuple[int, ...]): Простые окна.
        checked (int): Число проверенных многочленов.
        min_nonvanishing (int): Наименьшее число простых, где q не обнуляется.
        worst_polynomial (Optional[IntPolynomial2]): Многочлен, на котором достигается минимум.
        passed (bool): Вердикт.
        diagonal (bool): Поиск ограничен парами σ = τ.
        rounds (int): Число опробованных пар.
    """

    degree: int
    height: int
    threshold: int
    window: Tuple[int, ...]
    checked: int
    min_nonvanishing: int
    worst_polynomial: Optional[IntPolynomial2]
    passed: bool
    diagonal: bool = False
    rounds: int = 1


@dataclass(frozen=True)
class ProductElement:
    """
    Элемент произведения ∏_{p∈S} (Z/p)^{r_p} в нормальной форме
    x = α_{1/n}(Σ c_ij·σ₁^i σ₂^j(a)) + g, где g имеет конечный носитель.

    Attributes:
        exceptions (Tuple[Tuple[int, Vector], ...]): Конечный носитель g: пары (p, вектор над Z/p).
        n (int): Знаменатель хвоста, n ≥ 1.
        tail (Tuple[Tuple[Tuple[int, int], int], ...]): Пары ((i, j), c_ij) хвоста.
    """

    exceptions: Tuple[Tuple[int, Vector], ...] = ()
    n: int = 1
    tail: Tuple[Tuple[Tuple[int, int], int], ...] = ()

    def __post_init__(self):
        if self.n < 1 or (not self.tail and self.n != 1):
            raise NonCanonicalException(f'n = {self.n}')
        primes = [p for p, _ in self.exceptions]
        if primes != sorted(set(primes)):
            raise NonCanonicalException(str(primes))
        for p, vector in self.exceptions:
            if not any(vector) or any(not 0 <= a < p for a in vector):
                raise NonCanonicalException(f'{p}: {vector}')
        monomials = [m for m, _ in self.tail]
        if monomials != sorted(set(monomials)) or any(c == 0 for _, c in self.tail):
            raise NonCanonicalException(str(self.tail))
        if any(i < 0 or j < 0 for i, j in monomials):
            raise NonCanonicalException(str(monomials))

    @classmethod
    def make(
        cls,
        exceptions: Dict[int, Vector] = None,
        n: int = 1,
        tail: Dict[Tuple[int, int], int] = None,
    ) -> 'ProductElement':
        """
        Нормальная форма: векторы приводятся по модулю p, нулевые отбрасываются, пустой хвост получает n = 1.
        """
        reduced = {p: tuple(a % p for a in vector) for p, vector in (exceptions or {}).items()}
        reduced = {p: vector for p, vector in reduced.items() if any(vector)}
        terms = {m: c for m, c in (tail or {}).items() if c}
        return cls(tuple(sorted(reduced.items())), n if terms else 1, tuple(sorted(terms.items())))

    @classmethod
    def base_point(cls) -> 'ProductElement':
        return cls.make(tail={(0, 0): 1})

    @property
    def has_tail(self) -> bool:
        return bool(self.tail)


@dataclass(frozen=True)
class SocleWitness:
    """
    Пара H₁, H₂ ⊆ ∏ (Z/p)^{r_p}: H_ℓ порождена G = ⊕ (Z/p)^{r_p} и K_ℓ и замкнута относительно α_{1/n}.

    Attributes:
        window (PrimeWindow): Множество простых и окно.
        sigmas (SigmaPair): Автоморфизмы σ₁, σ₂.
        certificate (AvoidanceCertificate): Сертификат избегания.
        base_overrides (Tuple[Tuple[int, Vector], ...]): Проекции базовой точки a, отличные от (1, ..., 1).
        h1_grid (GridShape): Сетка K₁.
        h2_grid (GridShape): Сетка K₂.
        reduced_note (str): Обоснование редуцированности.
    """

    window: PrimeWindow
    sigmas: SigmaPair
    certificate: AvoidanceCertificate
    base_overrides: Tuple[Tuple[int, Vector], ...] = ()
    h1_grid: GridShape = GridShape.K1
    h2_grid: GridShape = GridShape.K2
    reduced_note: str = 'H_1 и H_2 редуцированы как подгруппы редуцированного произведения'

    def base_at(self, p: int) -> Vector:
        overrides = dict(self.base_overrides)
        return overrides[p] if p in overrides else (1,) * self.window.rank_at(p)

    def grid(self, which: GridShape) -> GridShape:
        return self.h1_grid if which == GridShape.K1 else self.h2_grid


@dataclass(frozen=True)
class ReductionStep:
    """
    Шаг протокола сведения.

    Attributes:
        name (str): Имя шага.
        detail (str): Описание результата.
        trivial (bool): Шаг ничего не изменил.
    """

    name: str
    detail: str
    trivial: bool = False


@dataclass(frozen=True)
class ReductionTranscript:
    """
    Протокол сведения группы неограниченной экспоненты к свидетелю на цоколе.

    Attributes:
        spec (GroupSpec): Исходная группа.
        m (int): Число M, изолирующее ограниченные типы бесконечной кратности.
        torsion_part (GroupSpec): G[M].
        reduced_part (GroupSpec): MG, на котором строится свидетель.
        socle (GroupSpec): Цоколь MG.
        shared (GroupSpec): Общая часть пары (G[M] и делимая часть).
        witness (SocleWitness): Свидетель на цоколе.
        steps (Tuple[ReductionStep, ...]): Шаги протокола.
        lift_note (str): Описание подъёма с цоколя на чистую подгруппу.
    """

    spec: GroupSpec
    m: int
    torsion_part: GroupSpec
    reduced_part: GroupSpec
    socle: GroupSpec
    shared: GroupSpec
    witness: SocleWitness
    steps: Tuple[ReductionStep, ...] = field(default=())
    lift_note: str = ''


@dataclass(frozen=True)
class CaseBSplit:
    """
    Разложение G = A ⊕ B: A периодическая часть без делимых слагаемых, B — остальное.

    Attributes:
        a_part (GroupSpec): Периодическая часть A.
        b_part (GroupSpec): Общая часть B.
        note (str): Прочтение определения C_ℓ.
    """

    a_part: GroupSpec
    b_part: GroupSpec
    note: str
