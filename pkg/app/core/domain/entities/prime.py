from sympy import isprime

from core.domain.exceptions.parsers import NotPrimeException


class Prime(int):
    """
    Простое число. Ведёт себя как int, простота проверяется при создании.

    Raises:
        NotPrimeException: Если значение не является простым числом.
    """

    def __new__(cls, value: int):
        if isinstance(value, bool) or not isprime(value):
            raise NotPrimeException(value)
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f'Prime({int(self)})'
