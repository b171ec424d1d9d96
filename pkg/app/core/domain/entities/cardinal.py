from dataclasses import dataclass

from core.domain.exceptions.parsers import UnsupportedCardinalException


@dataclass(frozen=True, order=True)
class Cardinal:
    """
    Кардинальное число: конечное n или алеф с натуральным индексом.

    Порядок полей обеспечивает нужный порядок: все конечные меньше всех алефов.

    Attributes:
        infinite (bool): Признак бесконечности.
        value (int): n для конечного числа, индекс i для алефа.
    """

    infinite: bool
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value < 0:
            raise UnsupportedCardinalException(repr(self.value))

    @classmethod
    def finite(cls, n: int) -> 'Cardinal':
        return cls(False, n)

    @classmethod
    def aleph(cls, index: int = 0) -> 'Cardinal':
        return cls(True, index)

    @property
    def is_zero(self) -> bool:
        return not self.infinite and self.value == 0

    def __add__(self, other: 'Cardinal') -> 'Cardinal':
        if self.infinite or other.infinite:
            return max(self, other)
        return Cardinal.finite(self.value + other.value)

    def capped(self) -> 'Cardinal':
        """
        Ограничение сверху значением ℵ₀.

        Returns:
            Cardinal: min(κ, ℵ₀).
        """
        return Cardinal.aleph(0) if self.infinite else self

    def times_infinite(self) -> 'Cardinal':
        """
        Произведение κ·ℵ₀ для ненулевого κ.

        Returns:
            Cardinal: max(κ, ℵ₀), либо 0 для κ = 0.
        """
        if self.is_zero:
            return self
        return max(self, Cardinal.aleph(0))

    def __str__(self) -> str:
        return f'aleph({self.value})' if self.infinite else str(self.value)


ZERO = Cardinal.finite(0)
ONE = Cardinal.finite(1)
ALEPH_0 = Cardinal.aleph(0)
