from collections import defaultdict
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from core.domain.entities.cardinal import Cardinal
from core.domain.entities.finite_group import Element, FiniteAbelianGroup, IntMatrix, SmithForm
from core.domain.entities.group_spec import Cyclic, GroupSpec
from core.domain.exceptions.groups import (
    InvalidFactorException,
    NotAPGroupException,
    NotFiniteSpecException,
    OrderBoundExceededException,
)
from core.service.parsers.spec_parser import SpecParser

DEFAULT_ORDER_BOUND = 2 ** 16
SUMMAND_CHUNK = 1024

Subgroup = FrozenSet[Element]


def _check_bound(group: FiniteAbelianGroup, order_bound: int) -> None:
    if group.order > order_bound:
        raise OrderBoundExceededException(group.order, order_bound)


def smith_normal_form(matrix: IntMatrix) -> SmithForm:
    """
    Нормальная форма Смита целочисленной матрицы с матрицами преобразований.

    Ведущий элемент выбирается минимальным по модулю; после обнуления строки и столбца
    проверяется делимость оставшегося блока, и при нарушении строка добавляется к ведущей.

    Args:
        matrix (IntMatrix): Матрица A размера m×n.

    Returns:
        SmithForm: Инвариантные множители, ранг свободной части, D, U и V с U·A·V = D.
    """
    m, n = matrix.nrows, matrix.ncols
    d = [list(row) for row in matrix.rows]
    u = [list(row) for row in IntMatrix.identity(m).rows]
    v = [list(row) for row in IntMatrix.identity(n).rows]

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, c: int) -> None:
        d[target] = [a + c * b for a, b in zip(d[target], d[source])]
        u[target] = [a + c * b for a, b in zip(u[target], u[source])]

    def add_col(target: int, source: int, c: int) -> None:
        for row in d:
            row[target] += c * row[source]
        for row in v:
            row[target] += c * row[source]

    rank = 0
    for t in range(min(m, n)):
        while True:
            pivot = min(
                ((abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j] != 0),
                default=None,
            )
            if pivot is None:
                break
            _, i, j = pivot
            swap_rows(t, i)
            swap_cols(t, j)

            clean = True
            for i in range(t + 1, m):
                add_row(i, t, -(d[i][t] // d[t][t]))
                clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                add_col(j, t, -(d[t][j] // d[t][t]))
                clean = clean and d[t][j] == 0
            if not clean:
                continue

            bad_row = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad_row is None:
                break
            add_row(t, bad_row, 1)

        if d[t][t] == 0:
            break
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
        rank += 1

    invariant_factors = tuple(d[t][t] for t in range(rank) if d[t][t] > 1)
    return SmithForm(
        invariant_factors=invariant_factors,
        free_rank=m - rank,
        diagonal=IntMatrix(tuple(map(tuple, d))),
        u=IntMatrix(tuple(map(tuple, u))),
        v=IntMatrix(tuple(map(tuple, v))),
    )


def invariant_factors_of(group: FiniteAbelianGroup) -> List[int]:
    """
    Инвариантные множители группы через нормальную форму Смита диагонального представления.

    Args:
        group (FiniteAbelianGroup): Группа.

    Returns:
        List[int]: Множители d_1 | d_2 | ... больше 1.
    """
    if not group.factors:
        return []
    return list(smith_normal_form(IntMatrix.diagonal(group.factors)).invariant_factors)


def realize(spec: GroupSpec, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteAbelianGroup:
    """
    Явная группа для конечного описания.

    Args:
        spec (GroupSpec): Нормализованное конечное описание.
        order_bound (int): Граница порядка.

    Returns:
        FiniteAbelianGroup: Группа с множителями p^k.

    Raises:
        NotFiniteSpecException: Если описание задаёт бесконечную группу.
    """
    if not spec.is_finite():
        raise NotFiniteSpecException(SpecParser.spec_to_str(spec))
    factors = []
    for family, mult in spec.entries:
        factors.extend([family.order] * mult.value)
    group = FiniteAbelianGroup(tuple(factors))
    _check_bound(group, order_bound)
    return group


def abelian_groups_of_order(n: int) -> List[FiniteAbelianGroup]:
    """
    Все абелевы группы порядка n с точностью до изоморфизма.

    Args:
        n (int): Порядок, n ≥ 1.

    Returns:
        List[FiniteAbelianGroup]: По одному представителю в примарной форме.
    """
    if n < 1:
        raise InvalidFactorException(n)
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        per_prime.append([
            tuple(p ** part for part, times in sorted(partition.items()) for _ in range(times))
            for partition in partitions(e)
        ])
    return [FiniteAbelianGroup(sum(choice, ())) for choice in product(*per_prime)]


def generate_subgroup(group: FiniteAbelianGroup, generators: Iterable[Element]) -> Subgroup:
    """
    Подгруппа, порождённая элементами.

    Args:
        group (FiniteAbelianGroup): Группа.
        generators (Iterable[Element]): Порождающие.

    Returns:
        Subgroup: Множество элементов подгруппы.
    """
    elements: Set[Element] = {group.zero}
    for generator in generators:
        generator = tuple(generator)
        if not group.contains(generator):
            raise InvalidFactorException(generator)
        if generator in elements:
            continue
        multiples = [group.scale(c, generator) for c in range(group.element_order(generator))]
        elements = {group.add(h, g) for h in elements for g in multiples}
    return frozenset(elements)


def _addition_table(group: FiniteAbelianGroup) -> Tuple[List[Element], np.ndarray]:
    elements = list(group.elements())
    index = {x: i for i, x in enumerate(elements)}
    table = np.array([[index[group.add(x, y)] for y in elements] for x in elements], dtype=np.int32)
    return elements, table


def _scaled_indices(table: np.ndarray, zero: int, c: int) -> np.ndarray:
    columns = np.arange(len(table))
    result = np.full(len(table), zero, dtype=np.int32)
    for _ in range(c):
        result = table[result, columns]
    return result


def all_subgroups(group: FiniteAbelianGroup, order_bound: int = DEFAULT_ORDER_BOUND) -> List[Subgroup]:
    """
    Все подгруппы перебором замыканий.

    Подъём идёт по шагам простого индекса: к H добавляется x ∉ H с px ∈ H.
    Все элементы полученной надгруппы, не лежащие в H, дают ту же надгруппу и дальше пропускаются.

    Args:
        group (FiniteAbelianGroup): Группа.
        order_bound (int): Граница порядка.

    Returns:
        List[Subgroup]: Подгруппы, отсортированные по порядку.
    """
    _check_bound(group, order_bound)
    elements, table = _addition_table(group)
    zero = elements.index(group.zero)
    scaled = {p: _scaled_indices(table, zero, p) for p in sorted(factorint(group.order))}
    trivial = np.zeros(len(elements), dtype=bool)
    trivial[zero] = True
    seen = {trivial.tobytes()}
    found = [trivial]
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for mask in frontier:
            members = np.flatnonzero(mask)
            covered = mask.copy()
            for p, multiples in scaled.items():
                for x in np.flatnonzero(mask[multiples] & ~mask):
                    if covered[x]:
                        continue
                    steps = [x]
                    for _ in range(p - 2):
                        steps.append(table[steps[-1], x])
                    bigger = mask.copy()
                    bigger[table[np.ix_(steps, members)].ravel()] = True
                    covered |= bigger
                    key = bigger.tobytes()
                    if key not in seen:
                        seen.add(key)
                        found.append(bigger)
                        next_frontier.append(bigger)
        frontier = next_frontier
    subgroups = (frozenset(elements[i] for i in np.flatnonzero(mask)) for mask in found)
    return sorted(subgroups, key=lambda subgroup: (len(subgroup), sorted(subgroup)))


def _multiples(group: FiniteAbelianGroup, elements: Iterable[Element], n: int) -> Set[Element]:
    return {group.scale(n, x) for x in elements}


@lru_cache(maxsize=1024)
def _group_multiples(group: FiniteAbelianGroup, n: int) -> FrozenSet[Element]:
    return frozenset(group.scale(n, x) for x in group.elements())


def is_pure_subgroup_bruteforce(
    group: FiniteAbelianGroup,
    generators: Sequence[Element],
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> bool:
    """
    Проверка чистоты подгруппы полным перебором.

    H чиста в G, если каждое уравнение nx = h с h ∈ H, разрешимое в G, разрешимо в H.
    Достаточно проверить 1 ≤ n ≤ exp(G).

    Args:
        group (FiniteAbelianGroup): Группа G.
        generators (Sequence[Element]): Порождающие подгруппы H.
        order_bound (int): Граница порядка.

    Returns:
        bool: Признак чистоты.
    """
    _check_bound(group, order_bound)
    subgroup = generate_subgroup(group, generators)
    for n in range(1, group.exponent + 1):
        solvable_in_group = _group_multiples(group, n) & subgroup
        if not solvable_in_group <= _multiples(group, subgroup, n):
            return False
    return True


def is_direct_summand(
    group: FiniteAbelianGroup,
    subgroup: Subgroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
    subgroups: Optional[Sequence[Subgroup]] = None,
) -> bool:
    """
    Проверка, что у подгруппы H есть дополнение K: H ∩ K = 0 и H + K = G.

    Args:
        group (FiniteAbelianGroup): Группа.
        subgroup (Subgroup): Подгруппа H.
        order_bound (int): Граница порядка.
        subgroups (Optional[Sequence[Subgroup]]): Уже построенный список подгрупп G.

    Returns:
        bool: Признак прямого слагаемого.
    """
    if subgroups is None:
        subgroups = all_subgroups(group, order_bound)
    target = group.order // len(subgroup)
    return any(
        len(candidate) == target and candidate & subgroup == {group.zero}
        for candidate in subgroups
    )


def direct_summands(
    group: FiniteAbelianGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
    subgroups: Optional[Sequence[Subgroup]] = None,
) -> List[Subgroup]:
    """
    Все прямые слагаемые группы.

    Подгруппы каждого порядка m записываются строками 0/1-матрицы без столбца нуля;
    H и K пересекаются по нулю ровно тогда, когда скалярное произведение их строк равно 0.
    H является слагаемым, если такая строка нашлась среди подгрупп порядка |G|/m.

    Args:
        group (FiniteAbelianGroup): Группа.
        order_bound (int): Граница порядка.
        subgroups (Optional[Sequence[Subgroup]]): Уже построенный список подгрупп G.

    Returns:
        List[Subgroup]: Прямые слагаемые, отсортированные по порядку.
    """
    if subgroups is None:
        subgroups = all_subgroups(group, order_bound)
    elements = list(group.elements())
    index = {x: i for i, x in enumerate(elements)}
    zero = index[group.zero]
    by_order: Dict[int, List[Subgroup]] = defaultdict(list)
    for subgroup in subgroups:
        by_order[len(subgroup)].append(subgroup)

    def rows(items: List[Subgroup]) -> np.ndarray:
        matrix = np.zeros((len(items), len(elements)), dtype=np.float32)
        for row, subgroup in enumerate(items):
            matrix[row, [index[x] for x in subgroup]] = 1
        matrix[:, zero] = 0
        return matrix

    summands = []
    for order, items in sorted(by_order.items()):
        complements = rows(by_order.get(group.order // order, [])).T
        candidates = rows(items)
        for start in range(0, len(items), SUMMAND_CHUNK):
            overlaps = candidates[start:start + SUMMAND_CHUNK] @ complements
            hits = (overlaps == 0).any(axis=1)
            summands.extend(subgroup for subgroup, hit in zip(items[start:start + SUMMAND_CHUNK], hits) if hit)
    return sorted(summands, key=lambda subgroup: (len(subgroup), sorted(subgroup)))


def _prime_of_p_group(group: FiniteAbelianGroup, p: int) -> None:
    for factor in group.factors:
        if set(factorint(factor)) != {p}:
            raise NotAPGroupException(group.factors, p)


def ulm_bruteforce(group: FiniteAbelianGroup, p: int, i: int, order_bound: int = DEFAULT_ORDER_BOUND) -> int:
    """
    i-й инвариант Ульма конечной p-группы прямым вычислением высот.

    P(G, i) = {g ∈ G[p] : ht_p(g) ≥ i}; результат равен dim P(G, i)/P(G, i+1) над полем из p элементов
    и совпадает с числом слагаемых Z/p^{i+1}.

    Args:
        group (FiniteAbelianGroup): p-группа.
        p (int): Простое число.
        i (int): Номер инварианта, i ≥ 0.
        order_bound (int): Граница порядка.

    Returns:
        int: Инвариант Ульма.

    Raises:
        NotAPGroupException: Если группа не является p-группой.
        InvalidFactorException: Если i < 0.
    """
    if i < 0:
        raise InvalidFactorException(i)
    _prime_of_p_group(group, p)
    _check_bound(group, order_bound)
    elements = list(group.elements())
    p_torsion = {x for x in elements if group.scale(p, x) == group.zero}
    high = _multiples(group, elements, p ** i) & p_torsion
    higher = _multiples(group, elements, p ** (i + 1)) & p_torsion
    ratio = len(high) // len(higher)
    dimension = 0
    while ratio > 1:
        ratio //= p
        dimension += 1
    return dimension


def iso_finite_bruteforce(
    first: FiniteAbelianGroup,
    second: FiniteAbelianGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> bool:
    """
    Проверка изоморфизма сравнением инвариантных множителей.

    Args:
        first (FiniteAbelianGroup): Первая группа.
        second (FiniteAbelianGroup): Вторая группа.
        order_bound (int): Граница порядка.

    Returns:
        bool: Признак изоморфизма.
    """
    _check_bound(first, order_bound)
    _check_bound(second, order_bound)
    return invariant_factors_of(first) == invariant_factors_of(second)


def socle_ranks_bruteforce(group: FiniteAbelianGroup, order_bound: int = DEFAULT_ORDER_BOUND) -> Dict[int, int]:
    """
    Ранги цоколя: для каждого p размерность подгруппы, порождённой элементами порядка p.

    Args:
        group (FiniteAbelianGroup): Группа.
        order_bound (int): Граница порядка.

    Returns:
        Dict[int, int]: Отображение p → ранг, только ненулевые ранги.
    """
    _check_bound(group, order_bound)
    elements = list(group.elements())
    ranks = {}
    for p in sorted(factorint(group.order)):
        generated = generate_subgroup(group, [x for x in elements if group.element_order(x) == p])
        rank, size = 0, len(generated)
        while size > 1:
            size //= p
            rank += 1
        ranks[p] = rank
    return ranks


def socle_spec_of(group: FiniteAbelianGroup) -> GroupSpec:
    return GroupSpec(tuple(
        (Cyclic(p, 1), Cardinal.finite(rank)) for p, rank in socle_ranks_bruteforce(group).items() if rank
    ))
