from core.domain.exceptions.base import PreconditionException


class CertificateFailedException(PreconditionException):
    """
    Исключение, вызываемое, когда сертификат независимости не получен ни для одного зерна.

    Attributes:
        p (int): Простое число.
        seeds (tuple): Опробованные зёрна.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, p: int, seeds: tuple):
        self.p = p
        self.seeds = seeds
        super().__init__(f'Ошибка: для p = {p} сертификат не получен при зёрнах {list(seeds)}.')


class InvalidRankException(PreconditionException):
    """
    Исключение, вызываемое для ранга k < 1.

    Attributes:
        k (int): Ранг.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, k: int):
        self.k = k
        super().__init__(f'Ошибка: ранг k = {k}, требуется k >= 1.')


class DuplicatePrimeException(PreconditionException):
    """
    Исключение, вызываемое, когда простое число повторяется в списке компонент.

    Attributes:
        p (int): Повторяющееся простое.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, p: int):
        self.p = p
        super().__init__(f'Ошибка: простое {p} встречается в списке компонент дважды.')


class EmptyWitnessException(PreconditionException):
    """
    Исключение, вызываемое для пустого списка компонент прямой суммы.
    """

    def __init__(self):
        super().__init__('Ошибка: список компонент пуст.')


class NoKPartException(PreconditionException):
    """
    Исключение, вызываемое, когда в группе нет слагаемых p-адических целых.

    Attributes:
        spec_str (str): Описание группы.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, spec_str: str):
        self.spec_str = spec_str
        super().__init__(f'Ошибка: у группы {spec_str} нет слагаемых Zhat(p).')


class SearchFailedException(PreconditionException):
    """
    Исключение, вызываемое, когда поиск пары автоморфизмов не уложился в окно простых.

    Attributes:
        window (tuple): Простые окна.
        polynomial (str): Многочлен, на котором поиск застрял.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, window: tuple, polynomial: str):
        self.window = window
        self.polynomial = polynomial
        super().__init__(
            f'Ошибка: в окне из {len(window)} простых не найдена пара, многочлен {polynomial} обнуляется слишком часто.'
        )


class NotSuperstableException(PreconditionException):
    """
    Исключение, вызываемое, когда теория группы не суперстабильна.

    Attributes:
        spec_str (str): Описание группы.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, spec_str: str):
        self.spec_str = spec_str
        super().__init__(f'Ошибка: теория группы {spec_str} не суперстабильна.')


class NotApplicableException(PreconditionException):
    """
    Исключение, вызываемое, когда операция неприменима к данной группе.

    Attributes:
        reason (str): Причина.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f'Ошибка: операция неприменима: {reason}.')


class NonCanonicalException(PreconditionException):
    """
    Исключение, вызываемое для элемента произведения не в канонической форме.

    Attributes:
        element (str): Представление элемента.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, element: str):
        self.element = element
        super().__init__(f'Ошибка: элемент {element} не в канонической форме.')


class BasePointZeroException(PreconditionException):
    """
    Исключение, вызываемое, когда проекция базовой точки на простое окна равна нулю.

    Attributes:
        p (int): Простое число.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, p: int):
        self.p = p
        super().__init__(f'Ошибка: проекция базовой точки на компоненту Z/{p} равна нулю.')


class InvalidConfigException(PreconditionException):
    """
    Исключение, вызываемое для недопустимого значения параметра конфигурации.

    Attributes:
        field (str): Имя параметра.
        value (object): Значение.
        message (str): Сообщение об ошибке.
    """

    def __init__(self, field: str, value: object):
        self.field = field
        self.value = value
        super().__init__(f'Ошибка: параметр {field} = {value} недопустим.')
