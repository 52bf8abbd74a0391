import pytest

from opsusp import barres
from opsusp.barres import (BarSelfTarget, EquivariantLift, bar_act, bar_d, bar_h, bar_label,
                           build_bar, cochain_class, contracting_homotopy_check,
                           contracting_homotopy_failures, equivariant_lift, group_homology,
                           parse_bar_label)
from opsusp.chaincore import AbelianGroup, homology, is_chain_map
from opsusp.symgrp import all_perms

T = (2, 1)
E = (1, 2)
Z, Z2, ZERO = AbelianGroup(1), AbelianGroup(0, (2,)), AbelianGroup(0)


def test_degree_one_and_two_differentials():
    tau = parse_bar_label("12*[21]")
    assert bar_d(tau) == {(T,): 1, (E,): -1}
    tt = parse_bar_label("12*[21|21]")
    assert {bar_label(k): c for k, c in bar_d(tt).items()} == {"21*[21]": 1, "12*[21]": 1}


def test_labels_round_trip():
    for x in barres.bar_basis(3, 2):
        assert parse_bar_label(bar_label(x)) == x


def test_basis_counts():
    for n, d in ((2, 4), (3, 2)):
        assert len(build_bar(n, d).complex.basis(d)) == barres.basis_count(n, d)
    assert len(barres.bar_generators(2, 3)) == 1


def test_augmentation_kills_boundaries():
    R = build_bar(3, 2)
    for x in R.complex.basis(1):
        assert sum(R.augmentation(k) * c for k, c in R.complex.d(x).items()) == 0


def test_differential_is_equivariant():
    R = build_bar(3, 3).complex
    for x in R.basis(2):
        for g in all_perms(3):
            lhs = R.d(bar_act(g, x))
            rhs = {bar_act(g, k): c for k, c in R.d(x).items()}
            assert lhs == rhs


@pytest.mark.parametrize("n,top", [(2, 4), (3, 3), (2, 6), (3, 4)])
def test_contracting_homotopy(n, top):
    assert contracting_homotopy_check(build_bar(n, top))


def test_corrupted_differential_detected():
    R = build_bar(2, 3)
    x = R.complex.basis(2)[0]
    diff = {k: R.complex.d(k) for k in R.complex.keys()}
    diff[x] = {k: -c for k, c in diff[x].items()}
    assert contracting_homotopy_failures(R.with_differential(diff))


def test_homotopy_formula():
    assert bar_h((E,)) == {}
    assert bar_h((T,)) == {(E, T): 1}


@pytest.mark.parametrize("n", [2, 3])
def test_resolution_is_acyclic(n):
    R = build_bar(n, 4)
    H = homology(R.complex, 0, 3)
    assert H[0] == Z and all(g.is_zero() for g in H[1:])


def test_group_homology_of_s2():
    assert group_homology(2, "trivial", 0, 4) == [Z, Z2, ZERO, Z2, ZERO]
    assert group_homology(2, "sign", 1, 1, cohomology=True) == [Z2]
    assert group_homology(1, "trivial", 0, 2) == [Z, ZERO, ZERO]


def test_group_homology_of_s3_trivial():
    # H_1(S_3) = Z/2 (abelianization), H_2 = 0, H_3 = Z/6
    assert group_homology(3, "trivial", 1, 3) == [Z2, ZERO, AbelianGroup(0, (6,))]


def test_lift_of_identity_germ():
    R = build_bar(2, 3)
    f = equivariant_lift(R, BarSelfTarget(R), {(E,): 1})
    assert is_chain_map(f)
    assert all(f(x) == {x: 1} for x in R.complex.basis(0))
    for x in R.complex.keys():
        for g in all_perms(2):
            assert f(bar_act(g, x)) == {bar_act(g, k): c for k, c in f(x).items()}


def test_lift_rejects_bad_target():
    R = build_bar(2, 3)
    target = BarSelfTarget(R)
    target.homotopy = lambda key: {}
    with pytest.raises(ValueError):
        EquivariantLift(2, target, {(E,): 1}, check_degrees=range(0, 2))


def test_cochain_class_of_sign_cocycle():
    # phi([tau]) = 1 is the generator of H^1(S_2; Z_sign) = Z/2
    rep = cochain_class(2, 1, lambda x: barres.sign(x[0]) if len(x) == 2 else 0, "sign")
    assert rep.is_equivariant and rep.is_cocycle and rep.order == 2 and rep.nonzero
