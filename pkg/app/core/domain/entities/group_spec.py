from dataclasses import dataclass, field
from itertools import count, islice
from typing import ClassVar, FrozenSet, Iterator, List, Optional, Tuple

from sympy import nextprime

from core.domain.entities.cardinal import ZERO, Cardinal
from core.domain.entities.prime import Prime
from core.domain.exceptions.parsers import InvalidModulusException, ZeroExponentException


@dataclass(frozen=True)
class PrimeSet:
    """
    Множество простых чисел: явное конечное или коконечное (все простые, кроме исключённых).

    Attributes:
        primes (FrozenSet[int]): Элементы явного множества или исключения коконечного.
        cofinite (bool): Признак коконечного множества.
    """

    primes: FrozenSet[int] = frozenset()
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'primes', frozenset(Prime(p) for p in self.primes))

    @classmethod
    def explicit(cls, primes) -> 'PrimeSet':
        return cls(frozenset(primes), False)

    @classmethod
    def all_except(cls, excluded=()) -> 'PrimeSet':
        return cls(frozenset(excluded), True)

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def contains(self, p: int) -> bool:
        return (p not in self.primes) if self.cofinite else (p in self.primes)

    def iter_primes(self) -> Iterator[int]:
        """
        Перечисление элементов множества по возрастанию (бесконечное для коконечного множества).
        """
        if not self.cofinite:
            yield from sorted(self.primes)
            return
        p = 2
        while True:
            if p not in self.primes:
                yield p
            p = nextprime(p)

    def first(self, n: int) -> List[int]:
        return list(islice(self.iter_primes(), n))

    def without(self, primes) -> 'PrimeSet':
        if self.cofinite:
            return PrimeSet.all_except(self.primes | frozenset(primes))
        return PrimeSet.explicit(self.primes - frozenset(primes))

    def fingerprint(self) -> tuple:
        return (self.cofinite, tuple(sorted(self.primes)))

    def __str__(self) -> str:
        listed = ','.join(map(str, sorted(self.primes)))
        if not self.cofinite:
            return '{' + listed + '}'
        return 'all\\{' + listed + '}' if self.primes else 'all'


@dataclass(frozen=True)
class ExponentSet:
    """
    Множество показателей k ≥ 1: явное конечное или коконечное.

    Attributes:
        exponents (FrozenSet[int]): Элементы явного множества или исключения коконечного.
        cofinite (bool): Признак коконечного множества.
    """

    exponents: FrozenSet[int] = frozenset()
    cofinite: bool = False

    def __post_init__(self):
        values = frozenset(self.exponents)
        if any(k < 1 for k in values):
            raise ZeroExponentException(str(sorted(values)))
        object.__setattr__(self, 'exponents', values)

    @classmethod
    def explicit(cls, exponents) -> 'ExponentSet':
        return cls(frozenset(exponents), False)

    @classmethod
    def all_except(cls, excluded=()) -> 'ExponentSet':
        return cls(frozenset(excluded), True)

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def contains(self, k: int) -> bool:
        return k >= 1 and ((k not in self.exponents) if self.cofinite else (k in self.exponents))

    def iter_exponents(self) -> Iterator[int]:
        if not self.cofinite:
            yield from sorted(self.exponents)
            return
        yield from (k for k in count(1) if k not in self.exponents)

    def fingerprint(self) -> tuple:
        return (self.cofinite, tuple(sorted(self.exponents)))

    def __str__(self) -> str:
        listed = ','.join(map(str, sorted(self.exponents)))
        if not self.cofinite:
            return '{' + listed + '}'
        return 'all\\{' + listed + '}' if self.exponents else 'all'


@dataclass(frozen=True)
class SummandFamily:
    """
    Базовый класс семейства прямых слагаемых.

    Attributes:
        rank (int): Ранг конструктора в каноническом порядке.
    """

    rank: ClassVar[int] = -1

    def sort_key(self) -> tuple:
        return (self.rank, 0, 0, ())


@dataclass(frozen=True)
class CyclicModulus(SummandFamily):
    """
    Циклическая группа Z/n с произвольным модулем; существует только до нормализации.

    Attributes:
        n (int): Модуль, n ≥ 2.
    """

    n: int
    rank: ClassVar[int] = -1

    def __post_init__(self):
        if self.n < 2:
            raise InvalidModulusException(self.n)

    def sort_key(self) -> tuple:
        return (self.rank, 0, self.n, ())


@dataclass(frozen=True)
class Cyclic(SummandFamily):
    """
    Циклическая группа Z/p^k.

    Attributes:
        p (int): Простое число.
        k (int): Показатель, k ≥ 1.
    """

    p: int
    k: int
    rank: ClassVar[int] = 0

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        if self.k < 1:
            raise ZeroExponentException(f'Z/{self.p}^{self.k}')

    @property
    def order(self) -> int:
        return self.p ** self.k

    def sort_key(self) -> tuple:
        return (self.rank, self.p, self.k, ())


@dataclass(frozen=True)
class CyclicPrimeFamily(SummandFamily):
    """
    Прямая сумма Z/p^k по всем p из множества простых.

    Attributes:
        primes (PrimeSet): Множество простых.
        k (int): Общий показатель, k ≥ 1.
    """

    primes: PrimeSet
    k: int
    rank: ClassVar[int] = 1

    def __post_init__(self):
        if self.k < 1:
            raise ZeroExponentException(f'sumP({self.primes}; Z/p^{self.k})')

    def sort_key(self) -> tuple:
        return (self.rank, 0, self.k, self.primes.fingerprint())


@dataclass(frozen=True)
class CyclicExponentFamily(SummandFamily):
    """
    Прямая сумма Z/p^k по всем k из множества показателей при фиксированном p.

    Attributes:
        p (int): Простое число.
        exponents (ExponentSet): Множество показателей.
    """

    p: int
    exponents: ExponentSet = field(default_factory=ExponentSet.all_except)
    rank: ClassVar[int] = 2

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))

    def sort_key(self) -> tuple:
        return (self.rank, self.p, 0, self.exponents.fingerprint())


@dataclass(frozen=True)
class Prufer(SummandFamily):
    """
    Квазициклическая группа Прюфера Z(p^∞).

    Attributes:
        p (int): Простое число.
    """

    p: int
    rank: ClassVar[int] = 3

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))

    def sort_key(self) -> tuple:
        return (self.rank, self.p, 0, ())


@dataclass(frozen=True)
class Rationals(SummandFamily):
    """
    Аддитивная группа рациональных чисел Q.
    """

    rank: ClassVar[int] = 4


@dataclass(frozen=True)
class PAdicComplete(SummandFamily):
    """
    Пополнение локализации Z_(p), то есть целые p-адические числа.

    Attributes:
        p (int): Простое число.
    """

    p: int
    rank: ClassVar[int] = 5

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))

    def sort_key(self) -> tuple:
        return (self.rank, self.p, 0, ())


@dataclass(frozen=True)
class PAdicPrimeFamily(SummandFamily):
    """
    Прямая сумма пополнений Z_(p) по всем p из множества простых.

    Attributes:
        primes (PrimeSet): Множество простых.
    """

    primes: PrimeSet
    rank: ClassVar[int] = 6

    def sort_key(self) -> tuple:
        return (self.rank, 0, 0, self.primes.fingerprint())


TORSION_FREE_DIVISIBLE = (Prufer, Rationals)
CYCLIC_FAMILIES = (Cyclic, CyclicPrimeFamily, CyclicExponentFamily)
PADIC_FAMILIES = (PAdicComplete, PAdicPrimeFamily)

Entry = Tuple[SummandFamily, Cardinal]


@dataclass(frozen=True)
class GroupSpec:
    """
    Символьное описание абелевой группы как прямой суммы семейств слагаемых с кардинальными кратностями.

    Нормальная форма строится функцией normalize; сам класс её не навязывает.

    Attributes:
        entries (Tuple[Entry, ...]): Пары (семейство, кратность).
    """

    entries: Tuple[Entry, ...] = ()

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_trivial(self) -> bool:
        return not self.entries

    def families(self, *kinds) -> List[Entry]:
        return [(family, mult) for family, mult in self.entries if isinstance(family, kinds)]

    def cyclic_multiplicity(self, p: int, k: int) -> Cardinal:
        """
        Кратность слагаемого Z/p^k с учётом семейств.

        Args:
            p (int): Простое число.
            k (int): Показатель.

        Returns:
            Cardinal: Суммарная кратность.
        """
        total = ZERO
        for family, mult in self.entries:
            if isinstance(family, Cyclic) and family.p == p and family.k == k:
                total += mult
            elif isinstance(family, CyclicPrimeFamily) and family.k == k and family.primes.contains(p):
                total += mult
            elif isinstance(family, CyclicExponentFamily) and family.p == p and family.exponents.contains(k):
                total += mult
        return total

    def prufer_multiplicity(self, p: int) -> Cardinal:
        total = ZERO
        for family, mult in self.families(Prufer):
            if family.p == p:
                total += mult
        return total

    def padic_multiplicity(self, p: int) -> Cardinal:
        total = ZERO
        for family, mult in self.entries:
            if isinstance(family, PAdicComplete) and family.p == p:
                total += mult
            elif isinstance(family, PAdicPrimeFamily) and family.primes.contains(p):
                total += mult
        return total

    def rational_rank(self) -> Cardinal:
        total = ZERO
        for _, mult in self.families(Rationals):
            total += mult
        return total

    def is_finite(self) -> bool:
        return all(isinstance(family, Cyclic) and not mult.infinite for family, mult in self.entries)

    def order(self) -> Optional[int]:
        """
        Порядок конечной группы.

        Returns:
            Optional[int]: Порядок или None для бесконечной группы.
        """
        if not self.is_finite():
            return None
        result = 1
        for family, mult in self.entries:
            result *= family.order ** mult.value
        return result


@dataclass(frozen=True)
class MSplit:
    """
    Результат разложения G = G[M] ⊕ MG.

    Attributes:
        m (int): Число M.
        torsion_part (GroupSpec): G[M].
        complement (GroupSpec): Дополнение, изоморфное MG.
        prufer_overlap (GroupSpec): M-кручение слагаемых Прюфера, учтённое в обеих частях.
        extended (bool): Признак применения расширения на слагаемые Прюфера.
    """

    m: int
    torsion_part: GroupSpec
    complement: GroupSpec
    prufer_overlap: GroupSpec
    extended: bool


@dataclass(frozen=True)
class ReducedDivisibleSplit:
    """
    Разложение G = K ⊕ C ⊕ D на p-адическую, циклическую и делимую части.

    Attributes:
        k_part (GroupSpec): Слагаемые Zhat(p) и их семейства.
        c_part (GroupSpec): Циклические слагаемые и их семейства.
        d_part (GroupSpec): Слагаемые Прюфера и Q.
    """

    k_part: GroupSpec
    c_part: GroupSpec
    d_part: GroupSpec
