import json
from re import fullmatch
from typing import List

from core.domain.entities.finite_group import FiniteAbelianGroup, IntMatrix
from core.domain.exceptions.parsers import StrToMatrixException
from core.service.parsers.regex_patters import (
    INTEGER_LIST_PATTERN,
    INTEGER_MATRIX_LIST_PATTERN,
    INTEGER_MATRIX_PATTERN,
)


class MatrixParser:
    """
    Разбор аргументов переборных проверок: списки, матрицы и списки элементов в записи JSON.
    """

    @staticmethod
    def _compact(data_str: str) -> str:
        return ''.join(data_str.split())

    @staticmethod
    def str_to_list(list_str: str) -> List[int]:
        compact = MatrixParser._compact(list_str)
        if not fullmatch(INTEGER_LIST_PATTERN, compact):
            raise StrToMatrixException(list_str)
        return json.loads(compact)

    @staticmethod
    def str_to_matrix(matrix_str: str) -> IntMatrix:
        compact = MatrixParser._compact(matrix_str)
        if not fullmatch(INTEGER_MATRIX_PATTERN, compact):
            raise StrToMatrixException(matrix_str)
        return IntMatrix(tuple(tuple(row) for row in json.loads(compact)))

    @staticmethod
    def str_to_elements(elements_str: str) -> List[tuple]:
        compact = MatrixParser._compact(elements_str)
        if not fullmatch(INTEGER_MATRIX_LIST_PATTERN, compact):
            raise StrToMatrixException(elements_str)
        return [tuple(element) for element in json.loads(compact)]

    @staticmethod
    def str_to_group(factors_str: str) -> FiniteAbelianGroup:
        """
        Группа Z/n_1 ⊕ ... ⊕ Z/n_r по списку модулей.

        Args:
            factors_str (str): Список модулей, например [4, 2].

        Returns:
            FiniteAbelianGroup: Группа.
        """
        return FiniteAbelianGroup(tuple(MatrixParser.str_to_list(factors_str)))
