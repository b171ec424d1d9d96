import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.domain.entities.group_spec import PrimeSet
from core.domain.entities.socle_witness import PrimeWindow, ProductElement
from core.domain.entities.witness import GridShape
from core.domain.exceptions.numbers import BudgetExceededException
from core.domain.exceptions.witnesses import (
    BasePointZeroException,
    NonCanonicalException,
    NotApplicableException,
    NotSuperstableException,
    SearchFailedException,
)
from core.service.solvers.group_spec_solver import parse_spec
from core.service.solvers.socle_witness_solver import (
    add,
    alpha_inv,
    apply_sigma,
    apply_sigma_inverse_at,
    case_b_split,
    choose_sigmas,
    evaluate,
    product_membership,
    reduce_unbounded,
    scale,
    socle_prop_incl_check,
    socle_witness_build,
)

from .strategies import product_elements

WINDOW = PrimeWindow.of(PrimeSet.all_except(), 5)
SMALL = dict(seed=1, degree=1, height=1, threshold=2)


@pytest.fixture(scope='module')
def witness():
    return socle_witness_build(WINDOW, **SMALL)


class TestWindow:
    def test_first_primes(self):
        assert WINDOW.window == (2, 3, 5, 7, 11)
        assert PrimeWindow.of(PrimeSet.all_except({2, 5}), 3).window == (3, 7, 11)

    def test_rank_overrides(self):
        window = PrimeWindow.of(PrimeSet.all_except(), 3, rank=2, overrides={3: 1})
        assert [window.rank_at(p) for p in window.window] == [2, 1, 2]


class TestChooseSigmas:
    def test_small_bounds(self, witness):
        certificate = witness.certificate
        assert certificate.passed
        assert certificate.min_nonvanishing >= 2
        assert certificate.checked == 3 ** 4 - 1
        assert certificate.window == WINDOW.window
        assert all(0 < s < p for p, s in witness.sigmas.sigma)

    def test_worst_polynomial(self, witness):
        worst = witness.certificate.worst_polynomial
        assert worst.box_degree <= 1 and worst.height == 1
        nonvanishing = [
            p for p in WINDOW.window
            if worst.evaluate_mod(witness.sigmas.sigma_at(p), witness.sigmas.tau_at(p), p)
        ]
        assert len(nonvanishing) == witness.certificate.min_nonvanishing

    def test_deterministic(self, witness):
        assert socle_witness_build(WINDOW, **SMALL) == witness

    def test_constant_polynomials(self):
        _, certificate = choose_sigmas(WINDOW, degree=0, height=1, threshold=5)
        assert certificate.passed
        assert certificate.rounds == 1
        assert certificate.min_nonvanishing == 5

    def test_diagonal_fails(self):
        with pytest.raises(SearchFailedException):
            socle_witness_build(WINDOW, diagonal=True, max_rounds=3, **SMALL)

    def test_budget(self):
        with pytest.raises(BudgetExceededException):
            socle_witness_build(WINDOW, seed=1, degree=2, height=2, budget=1000)

    def test_base_point_zero(self):
        with pytest.raises(BasePointZeroException):
            socle_witness_build(WINDOW, base_overrides={3: (0,)}, **SMALL)

    def test_default_bounds(self):
        full = socle_witness_build(PrimeWindow.of(PrimeSet.all_except(), 50), seed=1)
        assert full.certificate.passed
        assert full.certificate.checked == 5 ** 9 - 1
        entries = socle_prop_incl_check(full, m_max=5, height=2)
        assert all(entry.passed for entry in entries)


class TestAlpha:
    def test_components(self, witness):
        x = ProductElement.make({3: (1,), 5: (2,)})
        assert [evaluate(alpha_inv(x, 3), p, witness) for p in (3, 5)] == [(0,), (4,)]
        assert [evaluate(alpha_inv(x, 2), p, witness) for p in (3, 5)] == [(2,), (1,)]

    @given(product_elements(WINDOW.window), st.integers(1, 30), st.integers(1, 30))
    @settings(max_examples=50, deadline=None)
    def test_composition(self, x, a, b):
        assert alpha_inv(alpha_inv(x, b), a) == alpha_inv(x, a * b)

    @given(product_elements(WINDOW.window), st.integers(1, 30))
    @settings(max_examples=50, deadline=None)
    def test_inverse_off_divisors(self, witness, x, n):
        restored = scale(alpha_inv(x, n), n)
        for p in WINDOW.window:
            if n % p:
                assert evaluate(restored, p, witness) == evaluate(x, p, witness)
            else:
                assert evaluate(restored, p, witness) == (0,)


class TestLinearity:
    @given(product_elements(WINDOW.window), product_elements(WINDOW.window))
    @settings(max_examples=50, deadline=None)
    def test_add(self, witness, x, y):
        total = add(x, y, witness)
        for p in WINDOW.window:
            expected = tuple((a + b) % p for a, b in zip(evaluate(x, p, witness), evaluate(y, p, witness)))
            assert evaluate(total, p, witness) == expected

    @given(product_elements(WINDOW.window), st.integers(-5, 5))
    @settings(max_examples=50, deadline=None)
    def test_scale(self, witness, x, c):
        for p in WINDOW.window:
            assert evaluate(scale(x, c), p, witness) == tuple(a * c % p for a in evaluate(x, p, witness))

    @given(product_elements(WINDOW.window), st.sampled_from([1, 2]))
    @settings(max_examples=50, deadline=None)
    def test_sigma(self, witness, x, which):
        image = apply_sigma(x, which, witness)
        for p in WINDOW.window:
            scalar = witness.sigmas.scalar_at(p, which)
            assert evaluate(image, p, witness) == tuple(a * scalar % p for a in evaluate(x, p, witness))
            assert apply_sigma_inverse_at(evaluate(image, p, witness), p, which, witness) == evaluate(x, p, witness)

    def test_tail_scalars_outside_window(self, witness):
        assert witness.sigmas.sigma_at(101) == witness.sigmas.sigma_at(101)
        assert 0 < witness.sigmas.tau_at(101) < 101
        base = ProductElement.base_point()
        assert evaluate(apply_sigma(base, 2, witness), 101, witness) == (witness.sigmas.tau_at(101),)


class TestMembership:
    def test_base_point(self, witness):
        base = ProductElement.base_point()
        assert product_membership(base, GridShape.K1, witness)
        assert product_membership(base, GridShape.K2, witness)
        assert all(evaluate(base, p, witness) == (1,) for p in WINDOW.window)

    def test_sigmas_on_base_point(self, witness):
        base = ProductElement.base_point()
        assert not product_membership(apply_sigma(base, 2, witness), GridShape.K2, witness)
        assert product_membership(apply_sigma(base, 2, witness), GridShape.K1, witness)
        assert product_membership(apply_sigma(base, 1, witness), GridShape.K2, witness)

    @given(product_elements(WINDOW.window))
    @settings(max_examples=100, deadline=None)
    def test_h2_inside_h1(self, witness, x):
        if product_membership(x, GridShape.K2, witness):
            assert product_membership(x, GridShape.K1, witness)
        assert product_membership(apply_sigma(x, 1, witness), GridShape.K2, witness)

    def test_finite_support(self, witness):
        x = ProductElement.make({2: (1,), 7: (3,)})
        assert product_membership(x, GridShape.K2, witness)

    def test_denominators(self, witness):
        x = alpha_inv(apply_sigma(ProductElement.base_point(), 1, witness), 6)
        assert product_membership(x, GridShape.K2, witness)
        assert evaluate(x, 2, witness) == (0,) and evaluate(x, 3, witness) == (0,)

    def test_wrong_rank(self, witness):
        with pytest.raises(NonCanonicalException):
            product_membership(ProductElement.make({3: (1, 2)}), GridShape.K1, witness)

    def test_prime_outside_set(self):
        odd = socle_witness_build(PrimeWindow.of(PrimeSet.all_except({2}), 5), **SMALL)
        assert odd.window.window == (3, 5, 7, 11, 13)
        with pytest.raises(NonCanonicalException):
            product_membership(ProductElement.make({2: (1,)}), GridShape.K1, odd)


class TestProductElement:
    def test_normal_form(self):
        assert ProductElement.make({3: (3,)}) == ProductElement()
        assert ProductElement.make({5: (7,)}, 4) == ProductElement(((5, (2,)),))
        assert ProductElement.make(tail={(0, 0): 0}, n=3).n == 1

    @pytest.mark.parametrize('kwargs', [
        dict(n=2),
        dict(exceptions=((5, (1,)), (3, (1,)))),
        dict(exceptions=((3, (0,)),)),
        dict(exceptions=((3, (4,)),)),
        dict(tail=(((0, 0), 0),)),
        dict(tail=(((1, 0), 1), ((0, 0), 1))),
    ])
    def test_rejects_non_canonical(self, kwargs):
        with pytest.raises(NonCanonicalException):
            ProductElement(**kwargs)


class TestPropIncl:
    def test_structure(self, witness):
        entries = socle_prop_incl_check(witness, m_max=3, height=1)
        assert [entry.m for entry in entries] == [0, 1, 2, 3]
        assert all(entry.passed == (entry.detail >= witness.certificate.threshold) for entry in entries)
        assert all(0 <= entry.detail <= len(WINDOW.window) for entry in entries)


class TestReduceUnbounded:
    def test_with_bounded_part(self):
        transcript = reduce_unbounded(parse_spec('sumP(all;Z/p^2) + Z/4^w'), window=5, **SMALL)
        assert transcript.m == 4
        assert transcript.torsion_part == parse_spec('Z/4^w')
        assert transcript.reduced_part == parse_spec(r'sumP(all\{2};Z/p^2)')
        assert transcript.socle == parse_spec(r'sumP(all\{2};Z/p^1)')
        assert transcript.shared == parse_spec('Z/4^w')
        assert [step.name for step in transcript.steps] == ['case_a', 'm_split', 'socle', 'witness', 'lift']
        assert transcript.witness.window.window == (3, 5, 7, 11, 13)
        assert transcript.lift_note

    def test_trivial_steps(self):
        transcript = reduce_unbounded(parse_spec('sumP(all;Z/p^1) + Q'), window=5, **SMALL)
        assert transcript.m == 1
        assert transcript.torsion_part.is_trivial
        assert transcript.shared == parse_spec('Q')
        trivial = {step.name: step.trivial for step in transcript.steps}
        assert trivial['m_split'] and trivial['socle']

    def test_rank_overrides(self):
        transcript = reduce_unbounded(parse_spec('sumP(all;Z/p^1)^2 + Z/3'), window=3, **SMALL)
        assert transcript.witness.window.rank == 2
        assert transcript.witness.window.rank_at(3) == 3

    def test_not_superstable(self):
        with pytest.raises(NotSuperstableException):
            reduce_unbounded(parse_spec('sumK(3;all)'), window=5, **SMALL)

    @pytest.mark.parametrize('spec_str', ['Z/2^w', 'Zhat(5) + sumP(all;Z/p^1)'])
    def test_not_applicable(self, spec_str):
        with pytest.raises(NotApplicableException):
            reduce_unbounded(parse_spec(spec_str), window=5, **SMALL)


class TestCaseB:
    def test_split(self):
        split = case_b_split(parse_spec('Zhat(5) + Z/9 + Prufer(2) + sumP(all;Z/p^1)'))
        assert split.a_part == parse_spec('Z/9 + sumP(all;Z/p^1)')
        assert split.b_part == parse_spec('Zhat(5) + Prufer(2)')
        assert split.note
