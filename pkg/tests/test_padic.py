import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.domain.entities.padic import MatrixModPk, PAdicApprox, PAdicLazy, Valuation
from core.domain.entities.polynomial import IntPolynomial2
from core.domain.exceptions.numbers import (
    BudgetExceededException,
    IncompatibleSequenceException,
    NonUnitException,
    PrecisionMismatchException,
    SingularModPException,
)
from core.service.solvers.padic_solver import (
    divisible_in_localization,
    embed_rational,
    find_vanishing_combinations,
    independence_certificate,
    matrix_limit_inverse,
    padic_arith,
    search_space_size,
    valuation_of,
)

from .strategies import localized_rationals


class TestArithmetic:
    def test_inverse(self):
        assert padic_arith('inv', PAdicApprox(5, 3, 2)).residue == 63

    def test_valuation(self):
        assert padic_arith('val', PAdicApprox(5, 3, 50)) == Valuation(2, True)

    def test_valuation_of_zero_is_a_bound(self):
        valuation = padic_arith('val', PAdicApprox(5, 3, 0))
        assert valuation == Valuation(3, False)
        assert str(valuation) == '>=3'

    def test_wraparound(self):
        assert padic_arith('add', PAdicApprox(5, 3, 124), PAdicApprox(5, 3, 1)).residue == 0

    def test_mul_and_neg(self):
        assert padic_arith('mul', PAdicApprox(3, 2, 4), PAdicApprox(3, 2, 7)).residue == 1
        assert padic_arith('neg', PAdicApprox(3, 2, 4)).residue == 5

    def test_non_unit(self):
        with pytest.raises(NonUnitException):
            padic_arith('inv', PAdicApprox(5, 3, 10))

    def test_mismatch(self):
        with pytest.raises(PrecisionMismatchException):
            padic_arith('add', PAdicApprox(5, 3, 1), PAdicApprox(5, 4, 1))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 10 ** 9).filter(lambda a: a % 7), st.integers(1, 12))
    def test_inverse_is_inverse(self, value, precision):
        x = PAdicApprox.of(value, 7, precision)
        assert padic_arith('mul', x, padic_arith('inv', x)).residue == 1


class TestLazy:
    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5, 7]), st.integers(1, 30), st.integers(0, 30))
    def test_truncation_coherent(self, seed, p, precision, extra):
        x = PAdicLazy.random(p, seed, 'x')
        assert x.truncate(precision + extra) % p ** precision == x.truncate(precision)

    def test_random_is_deterministic_unit(self):
        first, second = PAdicLazy.random(5, 3, 'gamma1'), PAdicLazy.random(5, 3, 'gamma1')
        assert first.truncate(20) == second.truncate(20)
        assert first.is_unit()
        assert first.truncate(20) != PAdicLazy.random(5, 3, 'gamma2').truncate(20)

    def test_from_rational(self):
        x = PAdicLazy.from_rational(Fraction(1, 2), 5)
        assert 2 * x.truncate(6) % 5 ** 6 == 1
        with pytest.raises(NonUnitException):
            PAdicLazy.from_rational(Fraction(1, 5), 5)

    def test_concurrent_readers_agree(self):
        x = PAdicLazy.random(3, 11, 'shared')
        results = []

        def read():
            results.append(tuple(x.truncate(n) for n in range(1, 40)))

        threads = [threading.Thread(target=read) for _ in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert len(set(results)) == 1


class TestCompletionDivisibility:
    @settings(max_examples=300, deadline=None)
    @given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), localized_rationals(p))),
           st.integers(0, 12))
    def test_divisibility_survives_completion(self, pair, k):
        p, x = pair
        precision = 12
        assert divisible_in_localization(x, p, k) == valuation_of(embed_rational(x, p, precision).residue, p, precision).at_least(k)

    def test_examples(self):
        assert divisible_in_localization(Fraction(50, 3), 5, 2)
        assert not divisible_in_localization(Fraction(50, 3), 5, 3)
        assert divisible_in_localization(Fraction(0), 5, 10)


class TestMatrixLimitInverse:
    def test_scalar(self):
        inverses = matrix_limit_inverse(MatrixModPk(5, 2, ((2,),)).tower())
        assert [m.rows for m in inverses] == [((3,),), ((13,),)]

    def test_identity(self):
        inverses = matrix_limit_inverse(MatrixModPk.identity(3, 4, 2).tower())
        assert inverses == MatrixModPk.identity(3, 4, 2).tower()

    def test_singular(self):
        with pytest.raises(SingularModPException):
            matrix_limit_inverse(MatrixModPk(5, 3, ((5,),)).tower())

    def test_incompatible(self):
        with pytest.raises(IncompatibleSequenceException):
            matrix_limit_inverse([MatrixModPk(5, 1, ((2,),)), MatrixModPk(5, 2, ((3,),))])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 10 ** 6), min_size=4, max_size=4), st.integers(1, 6))
    def test_inverse_at_every_level(self, entries, precision):
        matrix = MatrixModPk(3, precision, (tuple(entries[:2]), tuple(entries[2:])))
        if matrix.det() % 3 == 0:
            with pytest.raises(SingularModPException):
                matrix_limit_inverse(matrix.tower())
            return
        for a, b in zip(matrix.tower(), matrix_limit_inverse(matrix.tower())):
            identity = MatrixModPk.identity(3, a.precision, 2)
            assert a @ b == identity
            assert b @ a == identity


class TestIndependenceCertificate:
    def test_equal_units_fail(self):
        gamma = PAdicLazy.random(5, 0, 'gamma')
        certificate = independence_certificate(gamma, gamma, degree=1, height=1, precision=10)
        assert not certificate.passed
        assert certificate.relation == IntPolynomial2.from_dict({(1, 0): 1, (0, 1): -1})

    def test_square_fails(self):
        gamma = PAdicLazy.random(5, 0, 'gamma')
        certificate = independence_certificate(gamma, PAdicLazy.power(gamma, 2), degree=2, height=1, precision=10)
        assert not certificate.passed
        assert certificate.relation == IntPolynomial2.from_dict({(0, 1): 1, (2, 0): -1})

    def test_generic_pair_passes(self):
        certificate = independence_certificate(
            PAdicLazy.random(5, 1, 'gamma1'),
            PAdicLazy.random(5, 1, 'gamma2'),
            degree=1,
            height=1,
            precision=10,
            seed=1,
        )
        assert certificate.passed
        assert certificate.relation is None
        assert certificate.candidates == 3 ** 4
        assert (certificate.p, certificate.seed, certificate.precision) == (5, 1, 10)

    def test_relation_divisible_by_p(self):
        gamma1 = PAdicLazy.random(5, 1, 'gamma1')
        gamma2 = PAdicLazy.sum(gamma1, PAdicLazy.from_rational(Fraction(5 ** 11), 5))
        certificate = independence_certificate(gamma1, gamma2, degree=1, height=5, precision=12)
        assert not certificate.passed
        assert certificate.relation.content % 5 == 0
        assert certificate.relation.total_degree == 1 and certificate.relation.terms == 2
        primitive = independence_certificate(gamma1, gamma2, degree=1, height=5, precision=12, primitive_only=True)
        assert primitive.passed
        assert primitive.candidates == 11 ** 4

    def test_monotone(self):
        gamma1, gamma2 = PAdicLazy.random(7, 2, 'gamma1'), PAdicLazy.random(7, 2, 'gamma2')
        assert independence_certificate(gamma1, gamma2, degree=2, height=2, precision=20).passed
        assert independence_certificate(gamma1, gamma2, degree=1, height=2, precision=20).passed
        assert independence_certificate(gamma1, gamma2, degree=1, height=1, precision=20).passed

    def test_budget(self):
        gamma1, gamma2 = PAdicLazy.random(5, 0, 'gamma1'), PAdicLazy.random(5, 0, 'gamma2')
        assert search_space_size(3, 3) == 7 ** 16
        with pytest.raises(BudgetExceededException):
            independence_certificate(gamma1, gamma2, degree=3, height=3, budget=10 ** 6)

    def test_non_unit(self):
        with pytest.raises(NonUnitException):
            independence_certificate(PAdicLazy.from_rational(Fraction(5), 5), PAdicLazy.random(5, 0, 'gamma2'))

    def test_vanishing_combinations(self):
        found = find_vanishing_combinations([1, 2, 3], 1, 7)
        assert (1, 1, -1) in found
        assert (-1, -1, 1) in found
        assert all(sum(c * v for c, v in zip(combination, [1, 2, 3])) % 7 == 0 for combination in found)
        assert (0, 0, 0) not in found
