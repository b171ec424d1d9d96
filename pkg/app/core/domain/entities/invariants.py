from dataclasses import dataclass
from typing import Optional, Tuple

from core.domain.entities.cardinal import ZERO, Cardinal
from core.domain.entities.group_spec import ExponentSet, PrimeSet


@dataclass(frozen=True)
class SzInvariants:
    """
    Инварианты Шмелевой, ограниченные сверху значением ℵ₀.

    α(p, k) = dim((p^{k-1}G)[p] / (p^kG)[p]), β(p) = lim dim(p^kG / p^{k+1}G), γ(p) = lim dim((p^kG)[p]).
    Значения α задаются явными точками и описаниями семейств; β и γ задаются точками,
    у β может быть общее значение на коконечном множестве простых.

    Attributes:
        alpha (Tuple[Tuple[int, int, Cardinal], ...]): Тройки (p, k, α(p, k)).
        alpha_prime_families (Tuple[Tuple[int, PrimeSet, Cardinal], ...]): Тройки (k, S, значение на S).
        alpha_exponent_families (Tuple[Tuple[int, ExponentSet, Cardinal], ...]): Тройки (p, K, значение на K).
        beta (Tuple[Tuple[int, Cardinal], ...]): Пары (p, β(p)) вне общего значения.
        beta_family (Optional[Tuple[PrimeSet, Cardinal]]): Общее значение β на множестве простых.
        gamma (Tuple[Tuple[int, Cardinal], ...]): Пары (p, γ(p)).
        bounded (bool): Признак ограниченности.
        exponent (Optional[int]): Экспонента ограниченной группы.
        nontrivial (bool): Признак нетривиальности группы.
    """

    alpha: Tuple[Tuple[int, int, Cardinal], ...]
    alpha_prime_families: Tuple[Tuple[int, PrimeSet, Cardinal], ...]
    alpha_exponent_families: Tuple[Tuple[int, ExponentSet, Cardinal], ...]
    beta: Tuple[Tuple[int, Cardinal], ...]
    beta_family: Optional[Tuple[PrimeSet, Cardinal]]
    gamma: Tuple[Tuple[int, Cardinal], ...]
    bounded: bool
    exponent: Optional[int]
    nontrivial: bool

    def alpha_at(self, p: int, k: int) -> Cardinal:
        total = ZERO
        for q, j, value in self.alpha:
            if (q, j) == (p, k):
                total += value
        for j, primes, value in self.alpha_prime_families:
            if j == k and primes.contains(p):
                total += value
        for q, exponents, value in self.alpha_exponent_families:
            if q == p and exponents.contains(k):
                total += value
        return total.capped()

    def beta_at(self, p: int) -> Cardinal:
        for q, value in self.beta:
            if q == p:
                return value
        if self.beta_family and self.beta_family[0].contains(p):
            return self.beta_family[1]
        return ZERO

    def gamma_at(self, p: int) -> Cardinal:
        return dict(self.gamma).get(p, ZERO)


@dataclass(frozen=True)
class DivisibleInvariants:
    """
    Инварианты делимой части: число слагаемых Прюфера при каждом p и ранг Q-части.

    Attributes:
        prufer_count (Tuple[Tuple[int, Cardinal], ...]): Пары (p, кратность Z(p^∞)).
        rational_rank (Cardinal): Кратность Q.
    """

    prufer_count: Tuple[Tuple[int, Cardinal], ...]
    rational_rank: Cardinal


@dataclass(frozen=True)
class UlmTable:
    """
    Таблица инвариантов Ульма циклической части: Ulm(p, i) равен кратности Z/p^{i+1}.

    Attributes:
        entries (Tuple[Tuple[int, int, Cardinal], ...]): Тройки (p, i, значение).
        prime_families (Tuple[Tuple[int, PrimeSet, Cardinal], ...]): Тройки (i, S, значение при p ∈ S).
        exponent_families (Tuple[Tuple[int, ExponentSet, Cardinal], ...]): Тройки (p, K, значение при i + 1 ∈ K).
    """

    entries: Tuple[Tuple[int, int, Cardinal], ...]
    prime_families: Tuple[Tuple[int, PrimeSet, Cardinal], ...]
    exponent_families: Tuple[Tuple[int, ExponentSet, Cardinal], ...]
