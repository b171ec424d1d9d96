from core.domain.exceptions.base import PreconditionException


class PreconditionViolatedException(PreconditionException):
    """
    Исключение, вызываемое, когда M не аннулирует p-примарную часть (p^k не делит M).

    Attributes:
        p (int): Простое число.
        k (int): Показатель циклического слагаемого Z/p^k.
        m (int): Число M.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, p: int, k: int, m: int):
        self.p = p
        self.k = k
        self.m = m
        super().__init__(f'Ошибка: {p}^{k} не делит M = {m}.')


class NotAPGroupException(PreconditionException):
    """
    Исключение, вызываемое, когда конечная группа не является p-группой.

    Attributes:
        factors (tuple): Порядки циклических множителей.
        p (int): Простое число.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, factors: tuple, p: int):
        self.factors = factors
        self.p = p
        super().__init__(f'Ошибка: группа с множителями {list(factors)} не является {p}-группой.')


class OrderBoundExceededException(PreconditionException):
    """
    Исключение, вызываемое, когда порядок группы превышает границу полного перебора.

    Attributes:
        order (int): Порядок группы.
        bound (int): Граница.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, order: int, bound: int):
        self.order = order
        self.bound = bound
        super().__init__(f'Ошибка: порядок группы {order} превышает границу перебора {bound}.')


class NotFiniteSpecException(PreconditionException):
    """
    Исключение, вызываемое при попытке реализовать бесконечную группу явно.

    Attributes:
        spec_str (str): Описание группы.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, spec_str: str):
        self.spec_str = spec_str
        super().__init__(f'Ошибка: группа {spec_str} не является конечной.')


class InvalidFactorException(PreconditionException):
    """
    Исключение, вызываемое для циклического множителя порядка меньше 2 или элемента вне группы.

    Attributes:
        value (object): Недопустимое значение.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, value: object):
        self.value = value
        super().__init__(f'Ошибка: значение {value} недопустимо для конечной абелевой группы.')
