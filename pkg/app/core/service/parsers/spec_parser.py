from re import fullmatch
from typing import List, Tuple

from core.domain.entities.cardinal import ONE, Cardinal
from core.domain.entities.group_spec import (
    Cyclic,
    CyclicExponentFamily,
    CyclicModulus,
    CyclicPrimeFamily,
    Entry,
    ExponentSet,
    GroupSpec,
    PAdicComplete,
    PAdicPrimeFamily,
    PrimeSet,
    Prufer,
    Rationals,
    SummandFamily,
)
from core.domain.exceptions.parsers import (
    EmptyCofiniteComplementException,
    SpecSyntaxException,
    ZeroExponentException,
)
from core.service.parsers.regex_patters import (
    CYCLIC_PATTERN,
    EXPONENT_FAMILY_PATTERN,
    PADIC_FAMILY_PATTERN,
    PADIC_PATTERN,
    PRIME_FAMILY_PATTERN,
    PRUFER_PATTERN,
    RATIONALS_PATTERN,
    TERM_PATTERN,
    TRIVIAL_PATTERN,
)


class SpecParser:
    """
    Перевод строкового описания группы в список слагаемых и обратно.

    Грамматика: spec := term ("+" term)*, term := atom ["^" mult]; пробелы незначимы.
    Разбор не нормализует результат: это делает group_spec_solver.normalize.
    """

    @staticmethod
    def str_to_spec(spec_str: str) -> GroupSpec:
        """
        Разбор строки в ненормализованное описание группы.

        Args:
            spec_str (str): Строка в грамматике описаний.

        Returns:
            GroupSpec: Слагаемые в порядке записи.

        Raises:
            SpecParserException: При любой ошибке разбора.
        """
        compact, positions = SpecParser._strip_whitespace(spec_str)
        if not compact:
            raise SpecSyntaxException(spec_str, 0)
        if fullmatch(TRIVIAL_PATTERN, compact):
            return GroupSpec()

        entries: List[Entry] = []
        offset = 0
        for term in compact.split('+'):
            position = positions[offset] if offset < len(positions) else len(spec_str)
            entries.append(SpecParser._parse_term(term, spec_str, position))
            offset += len(term) + 1
        return GroupSpec(tuple(entries))

    @staticmethod
    def spec_to_str(spec: GroupSpec) -> str:
        """
        Запись описания группы в грамматике, принимаемой str_to_spec.

        Args:
            spec (GroupSpec): Описание группы.

        Returns:
            str: Строковая запись.
        """
        if spec.is_trivial:
            return '0'
        terms = []
        for family, mult in spec.entries:
            term = SpecParser.family_to_str(family)
            if mult != ONE:
                term += '^' + SpecParser.cardinal_to_str(mult)
            terms.append(term)
        return ' + '.join(terms)

    @staticmethod
    def family_to_str(family: SummandFamily) -> str:
        if isinstance(family, Cyclic):
            return f'Z/{family.order}'
        if isinstance(family, CyclicModulus):
            return f'Z/{family.n}'
        if isinstance(family, CyclicPrimeFamily):
            return f'sumP({family.primes};Z/p^{family.k})'
        if isinstance(family, CyclicExponentFamily):
            return f'sumK({family.p};{family.exponents})'
        if isinstance(family, Prufer):
            return f'Prufer({family.p})'
        if isinstance(family, Rationals):
            return 'Q'
        if isinstance(family, PAdicComplete):
            return f'Zhat({family.p})'
        if isinstance(family, PAdicPrimeFamily):
            return f'sumP({family.primes};Zhat)'
        raise TypeError(f'unknown summand family {family!r}')

    @staticmethod
    def cardinal_to_str(cardinal: Cardinal) -> str:
        if cardinal.infinite:
            return 'w' if cardinal.value == 0 else f'aleph({cardinal.value})'
        return str(cardinal.value)

    @staticmethod
    def _strip_whitespace(spec_str: str) -> Tuple[str, List[int]]:
        positions = [i for i, char in enumerate(spec_str) if not char.isspace()]
        return ''.join(spec_str[i] for i in positions), positions

    @staticmethod
    def _parse_term(term: str, spec_str: str, position: int) -> Entry:
        match = fullmatch(TERM_PATTERN, term)
        if not match:
            raise SpecSyntaxException(spec_str, position)
        mult = SpecParser._parse_mult(match.group('mult'))
        return SpecParser._parse_atom(match.group('atom'), spec_str, position), mult

    @staticmethod
    def _parse_mult(mult_str) -> Cardinal:
        if mult_str is None:
            return ONE
        if mult_str == 'w':
            return Cardinal.aleph(0)
        if mult_str.startswith('aleph('):
            return Cardinal.aleph(int(mult_str[len('aleph('):-1]))
        return Cardinal.finite(int(mult_str))

    @staticmethod
    def _parse_atom(atom: str, spec_str: str, position: int) -> SummandFamily:
        if fullmatch(RATIONALS_PATTERN, atom):
            return Rationals()
        if match := fullmatch(CYCLIC_PATTERN, atom):
            return CyclicModulus(int(match.group('n')))
        if match := fullmatch(PRUFER_PATTERN, atom):
            return Prufer(int(match.group('p')))
        if match := fullmatch(PADIC_PATTERN, atom):
            return PAdicComplete(int(match.group('p')))
        if match := fullmatch(PRIME_FAMILY_PATTERN, atom):
            k = int(match.group('k'))
            if k < 1:
                raise ZeroExponentException(atom)
            return CyclicPrimeFamily(SpecParser._parse_prime_set(match.group('primes'), atom), k)
        if match := fullmatch(PADIC_FAMILY_PATTERN, atom):
            return PAdicPrimeFamily(SpecParser._parse_prime_set(match.group('primes'), atom))
        if match := fullmatch(EXPONENT_FAMILY_PATTERN, atom):
            cofinite, values = SpecParser._parse_listed_set(match.group('exponents'), atom)
            if any(k < 1 for k in values):
                raise ZeroExponentException(atom)
            return CyclicExponentFamily(int(match.group('p')), ExponentSet(frozenset(values), cofinite))
        raise SpecSyntaxException(spec_str, position)

    @staticmethod
    def _parse_prime_set(set_str: str, atom: str) -> PrimeSet:
        cofinite, values = SpecParser._parse_listed_set(set_str, atom)
        return PrimeSet(frozenset(values), cofinite)

    @staticmethod
    def _parse_listed_set(set_str: str, atom: str) -> Tuple[bool, List[int]]:
        if set_str == 'all':
            return True, []
        cofinite = set_str.startswith('all')
        body = set_str[set_str.index('{') + 1:-1]
        if not body:
            raise EmptyCofiniteComplementException(atom)
        return cofinite, [int(value) for value in body.split(',')]
