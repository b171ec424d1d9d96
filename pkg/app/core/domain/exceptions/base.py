class PreconditionException(Exception):
    """
    Базовое исключение для нарушенных предусловий операций и ошибок выбора маршрута.

    Attributes:
        message (str): Сообщение об ошибке.
    """

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class BudgetException(Exception):
    """
    Базовое исключение для переборов, превышающих заданный бюджет.

    Attributes:
        message (str): Сообщение об ошибке.
    """

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)
