import itertools

import pytest
from hypothesis import given, strategies as st

from opsusp.operad import s0_gamma
from opsusp.symgrp import (CompositionShape, all_perms, block_sum, check_perm, compose,
                           from_cycles, identity, inverse, parity, parse_perm, perm_label,
                           parse_perm_label, sign, slot_shape, t_slot, tmap, to_cycles)

from .oracles import all_perms_oracle, perm_sign_by_inversions, tmap_oracle


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)


def test_compose_worked_example():
    assert compose((2, 3, 1, 4), (4, 3, 2, 1)) == (4, 1, 3, 2)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose((1, 2), (1, 2, 3))


def test_not_a_bijection():
    with pytest.raises(ValueError):
        check_perm((1, 1, 2))


def test_group_laws_exhaustive_s4():
    G = all_perms(4)
    assert sorted(G) == all_perms_oracle(4)
    e = identity(4)
    for p in G:
        assert compose(p, e) == compose(e, p) == p
        assert compose(p, inverse(p)) == e
        for q in G:
            assert parity(compose(p, q)) == (parity(p) + parity(q)) % 2
    for p, q, r in itertools.product(all_perms(3), repeat=3):
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


def test_parity_examples():
    assert parity(identity(5)) == 0
    assert parity((2, 1, 3)) == 1 and parity((1, 5, 3, 4, 2)) == 1
    assert parity(from_cycles([(1, 4), (2, 5), (3, 6)], 6)) == 1


def test_block_sum_examples():
    assert block_sum([(2, 1), (1,)]) == (2, 1, 3)
    assert block_sum([identity(2), identity(3)]) == identity(5)
    for a in all_perms(2):
        for b in all_perms(3):
            assert parity(block_sum([a, b])) == (parity(a) + parity(b)) % 2


def test_tmap_worked_example():
    out = tmap((2, 1, 3), (3, 1, 2))
    assert out == (4, 5, 6, 1, 2, 3)
    assert to_cycles(out) == [(1, 4), (2, 5), (3, 6)]


def test_tmap_trivial_shapes():
    for s in all_perms(4):
        assert tmap((1, 1, 1, 1), s) == s
    assert tmap(CompositionShape((2, 0, 3)), identity(3)) == identity(5)
    with pytest.raises(ValueError):
        tmap((1, 2), identity(3))
    with pytest.raises(ValueError):
        CompositionShape((1, -1))


def test_t_slot_is_slot_shape():
    assert slot_shape(3, 2, 4) == (1, 4, 1)
    assert t_slot(4, 2, (2, 1, 3)) == tmap((1, 4, 1), (2, 1, 3))


def test_tmap_matches_s0_equivariance_exhaustive():
    # gamma(tau_1..tau_k; sigma x) = T_alpha(sigma) gamma(tau_sigma(1)..; x)
    for k in range(1, 4):
        for alpha in itertools.product(range(1, 4), repeat=k):
            taus = [identity(a) for a in alpha]
            for sigma in all_perms(k):
                lhs = s0_gamma(taus, sigma)
                assert lhs == tmap(alpha, sigma)


def test_cycle_and_label_parsing():
    assert parse_perm("3,1,2") == (3, 1, 2)
    assert parse_perm("312") == (3, 1, 2)
    assert parse_perm("(1 4)(2 5)(3 6)") == (4, 5, 6, 1, 2, 3)
    assert parse_perm("(1 2)", 3) == (2, 1, 3)
    p = tuple(range(10, 0, -1))
    assert parse_perm_label(perm_label(p)) == p


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4).flatmap(
    lambda a: st.tuples(st.just(tuple(a)), perms(len(a)))))
def test_tmap_matches_block_oracle(case):
    alpha, sigma = case
    assert sum(alpha) <= 12
    assert tmap(alpha, sigma) == tmap_oracle(alpha, sigma)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.integers(1, 3), perms(n), perms(n))))
def test_constant_shape_tmap_is_homomorphism(case):
    a, s, t = case
    alpha = (a,) * len(s)
    assert tmap(alpha, compose(s, t)) == compose(tmap(alpha, s), tmap(alpha, t))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.lists(st.integers(0, 3), min_size=n,
                                                              max_size=n), perms(n))))
def test_tmap_sign_is_product_of_block_crossings(case):
    alpha, sigma = case
    inv = sum(alpha[sigma[i] - 1] * alpha[sigma[j] - 1]
              for i in range(len(sigma)) for j in range(i + 1, len(sigma)) if sigma[i] > sigma[j])
    assert sign(tmap(alpha, sigma)) == (-1) ** inv


@given(st.integers(1, 6).flatmap(perms))
def test_sign_matches_inversion_oracle(p):
    assert sign(p) == perm_sign_by_inversions(p)
    assert from_cycles(to_cycles(p), len(p)) == p
