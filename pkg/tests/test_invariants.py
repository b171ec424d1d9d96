from itertools import product

import pytest
from hypothesis import given, settings
from sympy import primerange

from core.domain.entities.cardinal import ALEPH_0, ONE, ZERO, Cardinal
from core.domain.entities.group_spec import CyclicModulus
from core.service.solvers.finite_solver import abelian_groups_of_order, iso_finite_bruteforce, realize, ulm_bruteforce
from core.service.solvers.group_spec_solver import direct_sum, normalize, parse_spec
from core.service.solvers.invariants_solver import (
    divisible_invariants,
    elem_equivalent,
    iso_standard,
    sz_invariants,
    ulm_symbolic,
    ulm_table,
)

from .strategies import entry_lists, finite_entry_lists


def spec_of(group):
    return normalize([(CyclicModulus(factor), ONE) for factor in group.factors])


def capped_variant(entries):
    return [(family, ALEPH_0 if mult.infinite else mult) for family, mult in entries]


class TestUlm:
    @pytest.mark.parametrize('i, expected', [(2, Cardinal.finite(2)), (0, Cardinal.finite(1)), (1, ZERO)])
    def test_symbolic(self, i, expected):
        assert ulm_symbolic(parse_spec('Z/2 + Z/8^2'), 2, i) == expected

    def test_torsion_free(self):
        assert ulm_symbolic(parse_spec('Q^aleph(1)'), 3, 0) == ZERO

    def test_families(self):
        spec = parse_spec(r'sumP(all\{3};Z/p^2)^w + sumK(3;all\{1})')
        assert ulm_symbolic(spec, 5, 1) == ALEPH_0
        assert ulm_symbolic(spec, 3, 1) == ONE
        assert ulm_symbolic(spec, 3, 0) == ZERO

    @pytest.mark.parametrize('p, exponent', [
        (p, exponent) for p in primerange(2, 2 ** 10) for exponent in range(1, 11) if p ** exponent <= 2 ** 10
    ])
    def test_agrees_with_bruteforce(self, p, exponent):
        for group in abelian_groups_of_order(p ** exponent):
            spec = spec_of(group)
            for i in range(exponent + 1):
                assert ulm_symbolic(spec, p, i).value == ulm_bruteforce(group, p, i)

    def test_table(self):
        table = ulm_table(parse_spec('Z/9^3 + sumP(all;Z/p^1)'))
        assert table.entries == ((3, 1, Cardinal.finite(3)),)
        assert [(i, mult) for i, _, mult in table.prime_families] == [(0, ONE)]


class TestDivisibleInvariants:
    def test_read_off(self):
        invariants = divisible_invariants(parse_spec('Prufer(2)^w + Q^3'))
        assert invariants.prufer_count == ((2, ALEPH_0),)
        assert invariants.rational_rank == Cardinal.finite(3)

    def test_cyclic_part_excluded(self):
        invariants = divisible_invariants(parse_spec('Z/2 + Prufer(2)'))
        assert invariants.prufer_count == ((2, ONE),)
        assert invariants.rational_rank == ZERO

    def test_trivial(self):
        invariants = divisible_invariants(parse_spec('0'))
        assert invariants.prufer_count == ()
        assert invariants.rational_rank == ZERO


class TestSzInvariants:
    def test_padic(self):
        invariants = sz_invariants(parse_spec('Zhat(2)'))
        assert invariants.beta_at(2) == ONE
        assert invariants.beta_at(3) == ZERO
        assert invariants.gamma == ()
        assert invariants.alpha == ()
        assert not invariants.bounded

    def test_bounded(self):
        invariants = sz_invariants(parse_spec('Z/4^w'))
        assert invariants.alpha_at(2, 2) == ALEPH_0
        assert invariants.beta == ()
        assert invariants.gamma == ()
        assert invariants.bounded
        assert invariants.exponent == 4

    def test_prufer(self):
        invariants = sz_invariants(parse_spec('Prufer(3)'))
        assert invariants.gamma_at(3) == ONE
        assert invariants.alpha == ()
        assert invariants.beta == ()
        assert not invariants.bounded

    def test_exponent_family(self):
        invariants = sz_invariants(parse_spec('sumK(5;all)'))
        assert invariants.alpha_at(5, 7) == ONE
        assert invariants.beta_at(5) == ALEPH_0
        assert invariants.gamma_at(5) == ALEPH_0

    def test_padic_family(self):
        invariants = sz_invariants(parse_spec(r'sumP(all\{2};Zhat)^2 + Zhat(2)'))
        assert invariants.beta_at(2) == ONE
        assert invariants.beta_at(101) == Cardinal.finite(2)

    def test_exponent_is_lcm(self):
        assert sz_invariants(parse_spec('Z/4 + Z/3 + Z/2^5')).exponent == 12

    def test_values_capped(self):
        assert sz_invariants(parse_spec('Z/2^aleph(3)')).alpha_at(2, 1) == ALEPH_0


class TestElementaryEquivalence:
    @pytest.mark.parametrize('first, second, expected', [
        ('Z/4', 'Z/2 + Z/2', False),
        ('Zhat(2)', 'Zhat(2)^2', False),
        ('Q', 'Q^w', True),
        ('Prufer(2)^w', 'Prufer(2)^aleph(1)', True),
        ('Z/2^w', 'Z/2^aleph(2)', True),
        ('Q', 'Prufer(2)', False),
        ('0', 'Q', False),
        ('Z/4^w', 'Z/4^w + Z/2', False),
    ])
    def test_examples(self, first, second, expected):
        assert elem_equivalent(parse_spec(first), parse_spec(second)) == expected

    @pytest.mark.slow
    @pytest.mark.parametrize('order', range(1, 513))
    def test_agrees_with_isomorphism_on_finite_groups(self, order):
        groups = abelian_groups_of_order(order)
        specs = [spec_of(group) for group in groups]
        for (first, a), (second, b) in product(zip(groups, specs), repeat=2):
            assert elem_equivalent(a, b) == iso_finite_bruteforce(first, second)

    @settings(max_examples=50, deadline=None)
    @given(finite_entry_lists(), finite_entry_lists())
    def test_finite_specs(self, first, second):
        a, b = normalize(first), normalize(second)
        assert elem_equivalent(a, b) == iso_finite_bruteforce(realize(a), realize(b))

    @settings(max_examples=100, deadline=None)
    @given(entry_lists(max_size=3), entry_lists(max_size=3))
    def test_direct_sum_congruence(self, first, second):
        a, b = normalize(first), normalize(second)
        a_variant, b_variant = normalize(capped_variant(first)), normalize(capped_variant(second))
        assert elem_equivalent(a, a_variant)
        assert elem_equivalent(direct_sum(a, b), direct_sum(a_variant, b_variant))

    @settings(max_examples=200, deadline=None)
    @given(entry_lists(), entry_lists())
    def test_isomorphism_implies_equivalence(self, first, second):
        a, b = normalize(first), normalize(second)
        if iso_standard(a, b):
            assert elem_equivalent(a, b)

    @settings(max_examples=100, deadline=None)
    @given(entry_lists())
    def test_reflexive(self, entries):
        spec = normalize(entries)
        assert elem_equivalent(spec, spec)
        assert iso_standard(spec, spec)


class TestIsoStandard:
    @pytest.mark.parametrize('first, second, expected', [
        ('Prufer(2)^w + Q', 'Q + Prufer(2)^w', True),
        ('Prufer(2)^w', 'Prufer(2)^aleph(1)', False),
        ('Zhat(2)^2', 'Zhat(2)^3', False),
        ('Z/6', 'Z/2 + Z/3', True),
    ])
    def test_examples(self, first, second, expected):
        assert iso_standard(parse_spec(first), parse_spec(second)) == expected
