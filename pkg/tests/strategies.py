from fractions import Fraction

from hypothesis import strategies as st

from core.domain.entities.cardinal import Cardinal
from core.domain.entities.group_spec import (
    Cyclic,
    CyclicExponentFamily,
    CyclicPrimeFamily,
    ExponentSet,
    PAdicComplete,
    PAdicPrimeFamily,
    PrimeSet,
    Prufer,
    Rationals,
)
from core.domain.entities.socle_witness import ProductElement

SMALL_PRIMES = (2, 3, 5, 7)


def primes():
    return st.sampled_from(SMALL_PRIMES)


def finite_cardinals(max_value=3):
    return st.integers(1, max_value).map(Cardinal.finite)


def cardinals():
    return st.one_of(finite_cardinals(), st.sampled_from([Cardinal.aleph(0), Cardinal.aleph(1)]))


def excluded_primes():
    return st.frozensets(primes(), max_size=2)


def cyclics(max_k=3):
    return st.builds(Cyclic, primes(), st.integers(1, max_k))


def families():
    return st.one_of(
        cyclics(),
        st.builds(Prufer, primes()),
        st.just(Rationals()),
        st.builds(PAdicComplete, primes()),
        st.builds(CyclicPrimeFamily, excluded_primes().map(PrimeSet.all_except), st.integers(1, 2)),
        st.builds(PAdicPrimeFamily, excluded_primes().map(PrimeSet.all_except)),
        st.builds(
            CyclicExponentFamily,
            primes(),
            st.frozensets(st.integers(1, 3), max_size=2).map(ExponentSet.all_except),
        ),
    )


def entry_lists(family_strategy=None, cardinal_strategy=None, max_size=4):
    return st.lists(
        st.tuples(family_strategy or families(), cardinal_strategy or cardinals()),
        max_size=max_size,
    )


def superstable_entry_lists(max_size=4):
    """
    Слагаемые без семейств по показателям и с конечными кратностями у семейств по простым.
    """
    infinite_families = st.one_of(
        st.builds(CyclicPrimeFamily, excluded_primes().map(PrimeSet.all_except), st.integers(1, 2)),
        st.builds(PAdicPrimeFamily, excluded_primes().map(PrimeSet.all_except)),
    )
    points = st.one_of(cyclics(), st.builds(Prufer, primes()), st.just(Rationals()), st.builds(PAdicComplete, primes()))
    return st.lists(
        st.one_of(st.tuples(points, cardinals()), st.tuples(infinite_families, finite_cardinals())),
        max_size=max_size,
    )


def omega_stable_entry_lists(max_size=4):
    points = st.one_of(cyclics(), st.builds(Prufer, primes()), st.just(Rationals()))
    return entry_lists(points, cardinals(), max_size)


def finite_entry_lists(max_size=2):
    small = st.builds(Cyclic, st.sampled_from((2, 3)), st.integers(1, 2))
    return entry_lists(small, finite_cardinals(2), max_size)


def localized_rationals(p):
    return st.builds(
        Fraction,
        st.integers(-10 ** 6, 10 ** 6),
        st.integers(1, 50).filter(lambda d: d % p),
    )


def product_elements(window, max_terms=3):
    """
    Элементы произведения с носителем на простых окна и хвостом с небольшими мономами.
    """
    exceptions = st.dictionaries(
        st.sampled_from(window),
        st.integers(0, 10 ** 3).map(lambda a: (a,)),
        max_size=2,
    )
    tails = st.dictionaries(
        st.tuples(st.integers(0, 2), st.integers(0, 2)),
        st.integers(-3, 3),
        max_size=max_terms,
    )
    return st.builds(ProductElement.make, exceptions, st.integers(1, 12), tails)
