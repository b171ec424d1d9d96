class SpecParserException(Exception):
    """
    Базовое исключение разбора строкового описания группы.

    Attributes:
        message (str): Сообщение об ошибке.
    """

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class SpecSyntaxException(SpecParserException):
    """
    Исключение, вызываемое, когда строка не соответствует грамматике описания группы.

    Attributes:
        spec_str (str): Исходная строка.
        position (int): Позиция (с нуля) начала ошибочного слагаемого.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, spec_str: str, position: int):
        self.spec_str = spec_str
        self.position = position
        super().__init__(f'Ошибка: синтаксическая ошибка в позиции {position} строки "{spec_str}".')


class InvalidModulusException(SpecParserException):
    """
    Исключение, вызываемое для циклической группы Z/0 или Z/1.

    Attributes:
        modulus (int): Недопустимый модуль.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, modulus: int):
        self.modulus = modulus
        super().__init__(f'Ошибка: модуль Z/{modulus} недопустим (нужен модуль не меньше 2).')


class NotPrimeException(SpecParserException):
    """
    Исключение, вызываемое, когда на месте простого числа стоит составное.

    Attributes:
        value (int): Полученное число.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, value: int):
        self.value = value
        super().__init__(f'Ошибка: число {value} не является простым.')


class EmptyCofiniteComplementException(SpecParserException):
    """
    Исключение, вызываемое для записи all\\{} с пустым списком исключённых простых.

    Attributes:
        fragment (str): Фрагмент строки.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, fragment: str):
        self.fragment = fragment
        super().__init__(f'Ошибка: пустое дополнение в "{fragment}", используйте "all".')


class ZeroExponentException(SpecParserException):
    """
    Исключение, вызываемое для показателя степени 0 в семействе циклических групп.

    Attributes:
        fragment (str): Фрагмент строки.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, fragment: str):
        self.fragment = fragment
        super().__init__(f'Ошибка: показатель степени должен быть не меньше 1 в "{fragment}".')


class StrToMatrixException(SpecParserException):
    """
    Исключение, вызываемое, когда строка не содержит целочисленную матрицу или список.

    Attributes:
        matrix_str (str): Исходная строка.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, matrix_str: str):
        self.matrix_str = matrix_str
        super().__init__(f'Ошибка: строка {matrix_str} не содержит целочисленные данные нужной формы.')


class UnsupportedCardinalException(SpecParserException):
    """
    Исключение, вызываемое для кратности, не являющейся ни натуральным числом, ни алефом.

    Attributes:
        fragment (str): Фрагмент строки.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, fragment: str):
        self.fragment = fragment
        super().__init__(f'Ошибка: кратность "{fragment}" не поддерживается.')
