from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from core.domain.exceptions.witnesses import InvalidConfigException

FORMATS = ('json', 'text')


@dataclass(frozen=True)
class CliConfig:
    """
    Параметры запуска: точность, границы переборов, окно простых, зерно и формат вывода.

    Attributes:
        precision (int): Точность N p-адических вычислений.
        degree (int): Граница d степени многочленов в сертификатах.
        height (int): Граница B высоты многочленов.
        window (int): Число W простых в окне.
        threshold (int): Требуемое число простых окна в сертификате избегания.
        seed (int): Зерно.
        order_bound (int): Наибольший порядок группы для переборных проверок.
        budget (int): Бюджет переборов.
        prop_incl_bound (int): Наибольшее m в проверке цепочки оболочек.
        samples (int): Число элементов в пробах.
        format (str): json или text.
        out (Optional[Path]): Файл для отчёта.
        verbose (bool): Подробный журнал.
    """

    precision: int = 40
    degree: int = 2
    height: int = 2
    window: int = 50
    threshold: int = 5
    seed: int = 0
    order_bound: int = 2 ** 16
    budget: int = 10 ** 7
    prop_incl_bound: int = 5
    samples: int = 100
    format: str = 'json'
    out: Optional[Path] = None
    verbose: bool = False

    def __post_init__(self):
        for item in fields(self):
            value = getattr(self, item.name)
            if item.type is int and item.name != 'seed' and value < 1:
                raise InvalidConfigException(item.name, value)
        if self.seed < 0:
            raise InvalidConfigException('seed', self.seed)
        if self.format not in FORMATS:
            raise InvalidConfigException('format', self.format)
