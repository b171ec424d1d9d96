from core.domain.exceptions.base import BudgetException, PreconditionException


class NonUnitException(PreconditionException):
    """
    Исключение, вызываемое при обращении p-адического элемента, не являющегося единицей.

    Attributes:
        residue (int): Вычет.
        p (int): Простое число.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, residue: int, p: int):
        self.residue = residue
        self.p = p
        super().__init__(f'Ошибка: вычет {residue} делится на {p} и не обратим.')


class PrecisionMismatchException(PreconditionException):
    """
    Исключение, вызываемое при операции над p-адическими приближениями с разными (p, N).

    Attributes:
        first (tuple): Пара (p, N) первого аргумента.
        second (tuple): Пара (p, N) второго аргумента.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, first: tuple, second: tuple):
        self.first = first
        self.second = second
        super().__init__(f'Ошибка: несовместимые параметры (p, N): {first} и {second}.')


class SingularModPException(PreconditionException):
    """
    Исключение, вызываемое, когда определитель матрицы делится на p.

    Attributes:
        p (int): Простое число.
        determinant (int): Определитель по модулю p.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, p: int, determinant: int):
        self.p = p
        self.determinant = determinant
        super().__init__(f'Ошибка: матрица вырождена по модулю {p} (det = {determinant}).')


class IncompatibleSequenceException(PreconditionException):
    """
    Исключение, вызываемое, когда последовательность матриц не согласована при редукции.

    Attributes:
        level (int): Уровень n, на котором нарушена согласованность.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, level: int):
        self.level = level
        super().__init__(f'Ошибка: матрица уровня {level + 1} не редуцируется в матрицу уровня {level}.')


class PrecisionInsufficientException(PreconditionException):
    """
    Исключение, вызываемое, когда точности N недостаточно для проверки.

    Attributes:
        required (int): Требуемая точность.
        precision (int): Доступная точность.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, required: int, precision: int):
        self.required = required
        self.precision = precision
        super().__init__(f'Ошибка: требуется точность больше {required}, доступна {precision}.')


class BudgetExceededException(BudgetException):
    """
    Исключение, вызываемое, когда пространство перебора больше бюджета.

    Attributes:
        size (int): Размер пространства перебора.
        budget (int): Бюджет.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, size: int, budget: int):
        self.size = size
        self.budget = budget
        super().__init__(f'Ошибка: пространство перебора {size} превышает бюджет {budget}.')
