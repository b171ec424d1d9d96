from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class StabilityClass(Enum):
    OMEGA_STABLE = 'OmegaStable'
    SUPERSTABLE_NOT_OMEGA_STABLE = 'SuperstableNotOmegaStable'
    NOT_SUPERSTABLE = 'NotSuperstable'


class SbRoute(Enum):
    NONE = 'None'
    EXTERNAL_NON_SUPERSTABLE = 'ExternalNonSuperstable'
    PADIC_WITNESS = 'PAdicWitness'
    SOCLE_WITNESS = 'SocleWitness'


class UnipotenceWitnessKind(Enum):
    SCALAR_ON_K = 'ScalarOnK'
    COORDINATE_SCALARS = 'CoordinateScalars'


@dataclass(frozen=True)
class BasicPredicates:
    """
    Простейшие свойства группы.

    Attributes:
        divisible (bool): Все слагаемые делимы (Прюфер и Q).
        reduced (bool): Нет делимых слагаемых.
        exponent (Optional[int]): Экспонента, если группа ограничена.
    """

    divisible: bool
    reduced: bool
    exponent: Optional[int]

    @property
    def bounded(self) -> bool:
        return self.exponent is not None


@dataclass(frozen=True)
class SbVerdict:
    """
    Вердикт о свойстве Шрёдера-Бернштейна.

    Attributes:
        has_sb (bool): Наличие свойства; истинно ровно при route = NONE.
        route (SbRoute): Маршрут построения контрпримера.
        reason (str): Обоснование.
    """

    has_sb: bool
    route: SbRoute
    reason: str


@dataclass(frozen=True)
class GZeroIndex:
    """
    Индекс [G : G°]: конечное число или континуум.

    Attributes:
        value (Optional[int]): Конечный индекс или None для 2^ℵ₀.
    """

    value: Optional[int]

    @property
    def is_continuum(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return '2^aleph(0)' if self.value is None else str(self.value)


@dataclass(frozen=True)
class UnipotenceWitness:
    """
    Описание неунипотентного автоморфизма G/G°.

    Attributes:
        kind (UnipotenceWitnessKind): Вид свидетеля.
        primes (Tuple[int, ...]): Простые, на которых действует автоморфизм (для SCALAR_ON_K одно).
        scalars (Tuple[int, ...]): Скаляры по простым (для COORDINATE_SCALARS).
        orders (Tuple[int, ...]): Мультипликативные порядки скаляров.
        description (str): Текстовое описание.
    """

    kind: UnipotenceWitnessKind
    primes: Tuple[int, ...]
    scalars: Tuple[int, ...]
    orders: Tuple[int, ...]
    description: str


@dataclass(frozen=True)
class GZeroReport:
    """
    Отчёт о G° и унипотентности.

    Attributes:
        index (GZeroIndex): Индекс [G : G°].
        unipotent_all (bool): Все автоморфизмы G/G° унипотентны.
        witness (Optional[UnipotenceWitness]): Свидетель при unipotent_all = False.
    """

    index: GZeroIndex
    unipotent_all: bool
    witness: Optional[UnipotenceWitness]


@dataclass(frozen=True)
class ClassifyReport:
    """
    Сводка четырёх эквивалентных условий свойства SB.

    Attributes:
        stability_class (StabilityClass): Класс стабильности.
        verdict (SbVerdict): Вердикт о свойстве SB.
        condition3 (bool): G есть сумма делимой группы и ограниченной периодической.
        g_zero (Optional[GZeroReport]): Отчёт о G°; None для несуперстабильных теорий.
        g_zero_index (GZeroIndex): Индекс [G : G°].
        conditions_agree (bool): Совпадение независимо вычисленных условий.
    """

    stability_class: StabilityClass
    verdict: SbVerdict
    condition3: bool
    g_zero: Optional[GZeroReport]
    g_zero_index: GZeroIndex
    conditions_agree: bool

    @property
    def omega_stable(self) -> bool:
        return self.stability_class == StabilityClass.OMEGA_STABLE

    @property
    def superstable(self) -> bool:
        return self.stability_class != StabilityClass.NOT_SUPERSTABLE

    @property
    def condition4(self) -> Optional[bool]:
        return None if self.g_zero is None else self.g_zero.unipotent_all
