import itertools
import json

import pytest
from hypothesis import given, strategies as st

from opsusp.barres import from_bar_word, parse_bar_label
from opsusp.chaincore import ChainComplex, TruncationWindow, suspend
from opsusp.coalg import interval_complex
from opsusp.operad import (BarOperad, CoEnd, End, MutatedOperad, OperadMorphism, Susp,
                           TensorOperad, TruncationError, aw, aw_diagonal, augmentation_to_S0,
                           check_axioms, check_morphism, coend_pairing, identity_morphism,
                           make_coassoc, make_coend, make_S0, make_susp, operad_from_json,
                           operad_to_json, s0_circ, s0_gamma)
from opsusp.suspops import coend_suspension_iso, coend_sphere_signs, susp_witness, unit_sphere
from opsusp.symgrp import all_perms, block_sum, compose, tmap

from .oracles import tmap_oracle

T, E = (2, 1), (1, 2)


def two_gen():
    return ChainComplex({0: ["x"], 1: ["y"]}, {"y": {"x": 2}},
                        TruncationWindow(0, 1, truncated=False), "C", str)


class SignlessSusp(Susp):
    def composition_sign(self, n, i):
        return 1


def test_coassoc_composition():
    C = make_coassoc(6)
    assert C.circ(("b", 2), 1, ("b", 2)) == {("b", 3): 1}
    assert all(not C.d(k) for n in range(1, 7) for k in C.all_basis(n))


def test_susp_composition_and_components():
    P = make_susp(1, 5)
    assert P.circ(("s", 2), 2, ("s", 2)) == {("s", 3): -1}
    for n in range(1, 6):
        assert [d for d in range(-6, 7) if P.basis(n, d)] == [n - 1]
    Q = make_susp(-1, 5)
    assert [d for d in range(-6, 7) if Q.basis(4, d)] == [-3]
    assert P.act((2, 1, 3), ("s", 3)) == {("s", 3): -1}


def test_s0_components():
    S = make_S0(4)
    assert len(S.all_basis(4)) == 24 and S.degree_range(4) == (0, 0)


@pytest.mark.parametrize("O", [make_S0(4), make_coassoc(6), make_susp(1, 5), make_susp(-1, 5),
                               BarOperad(3, 3)], ids=lambda O: O.name)
def test_constructors_pass_axioms(O):
    rep = check_axioms(O)
    assert rep.ok, rep.summary()


def test_signless_susp_is_caught():
    # constant signs are still associative; the action and the slot swap see the defect
    rep = check_axioms(SignlessSusp(1, 4))
    assert rep.checked["associativity"] and "associativity" not in rep.failed_laws()
    assert {"equivariance", "commutativity"} <= set(rep.failed_laws())
    assert "s2" in rep.first("equivariance").instance


def test_one_flipped_susp_sign_breaks_associativity():
    rep = check_axioms(MutatedOperad(make_susp(1, 4), ("s", 2), 1, ("s", 2)))
    assert "associativity" in rep.failed_laws()


def test_mutation_is_located():
    S = make_S0(3)
    rep = check_axioms(MutatedOperad(S, E, 1, E), 3)
    assert not rep.ok and "12" in rep.first().instance


def test_gamma_is_right_associated_circ():
    S = make_S0(4)
    for k in (1, 2, 3):
        for sigma in all_perms(k):
            for alpha in itertools.product(range(1, 3), repeat=k):
                if sum(alpha) > 4:
                    continue
                us = [{p: 1} for p in (all_perms(a)[-1] for a in alpha)]
                got = S.gamma(us, {sigma: 1})
                taus = [next(iter(u)) for u in us]
                assert got == {s0_gamma(taus, sigma): 1}


def test_gamma_with_units_is_identity():
    S = make_S0(3)
    for sigma in all_perms(3):
        assert S.gamma([S.unit_element()] * 3, {sigma: 1}) == {sigma: 1}


def test_s0_gamma_formula():
    taus = [(2, 1), (1,), (1, 3, 2)]
    sigma = (3, 1, 2)
    assert tmap((2, 1, 3), sigma) == tmap_oracle((2, 1, 3), sigma) == (4, 5, 6, 1, 2, 3)
    want = compose(block_sum(taus), tmap_oracle((2, 1, 3), sigma))
    assert s0_gamma(taus, sigma) == want == (4, 6, 5, 2, 1, 3)


def test_truncation_error_on_rank_overflow():
    P = make_susp(1, 3)
    with pytest.raises(TruncationError):
        P.circ(("s", 2), 1, ("s", 3))


def test_coend_of_sphere():
    CZ = make_coend(unit_sphere(1), 5)
    for n in range(1, 6):
        assert [d for d in range(-6, 7) if CZ.basis(n, d)] == [n - 1]
    signs = coend_sphere_signs(1, 5)
    assert all(c == (-1) ** ((i - 1) * (n - 1)) for (n, m, i), c in signs.items())
    for direction in (1, -1):
        assert check_morphism(susp_witness(direction, 5)).ok


@pytest.mark.parametrize("make", [CoEnd, End], ids=["coend", "end"])
def test_hom_operads_pass_axioms(make):
    for C in (interval_complex(), two_gen()):
        rep = check_axioms(make(C, 3))
        assert rep.ok, rep.summary()


def test_coend_unit_is_identity():
    C = two_gen()
    O = make_coend(C, 2)
    f = ("x", ("x", "y"))
    assert O.compose(O.unit_element(), 1, {f: 1}) == {f: 1}


def test_coend_of_suspension_is_susp_tensor_coend():
    C = two_gen()
    src = TensorOperad(Susp(1, 3), CoEnd(C, 3))
    tgt = CoEnd(suspend(C, 1), 3)
    iso = coend_suspension_iso(C, 3)
    f = OperadMorphism(src, tgt, lambda k: iso(k[1]), "Σ")
    assert check_morphism(f).ok
    for n in range(1, 4):
        assert len(src.all_basis(n)) == len(tgt.all_basis(n))
        images = [next(iter(f(k))) for k in src.all_basis(n)]
        assert len(set(images)) == len(images)


def test_coend_pairing_is_morphism():
    A = unit_sphere(1)
    B = two_gen()
    assert check_morphism(coend_pairing(A, B, 3)).ok
    assert check_morphism(coend_pairing(A, unit_sphere(-1), 3)).ok


def test_tensor_sign():
    P = make_susp(1, 3)
    O = TensorOperad(P, P)
    a = (("s", 1), ("s", 2))
    c = (("s", 2), ("s", 1))
    got = O.circ(a, 1, c)
    assert got == {(("s", 2), ("s", 2)): -1}
    Z = TensorOperad(make_susp(1, 4), make_susp(-1, 4))
    assert all(Z.degree(k) == 0 for n in range(1, 5) for k in Z.all_basis(n))


def test_bar_degree_zero_is_s0():
    S = BarOperad(3, 2)
    S0 = make_S0(3)
    for a, b in itertools.product(S.basis(2, 0), repeat=2):
        for i in (1, 2):
            got = S.circ(a, i, b)
            assert got == {(next(iter(S0.circ(a[0], i, b[0]))),): 1}


def test_augmentations():
    S = BarOperad(3, 2)
    # the degree-0 projection respects the action and compositions but not d:
    # d[g] = g[] - [] does not vanish in Z[S_n]
    rep = check_morphism(augmentation_to_S0(S))
    assert rep.failed_laws() == ["chain-map"]
    C = make_coassoc(3)
    eps = OperadMorphism(S, C, lambda x: {("b", len(x[0])): 1} if len(x) == 1 else {}, "ε")
    assert check_morphism(eps).ok


def test_bar_degree_one_compositions():
    S = BarOperad(3, 2)
    tau = parse_bar_label("12*[21]")
    e2 = parse_bar_label("12*[]")
    got = {S.label(k): c for k, c in S.circ(tau, 1, e2).items()}
    assert got == {"123*[213]": 1}
    got = {S.label(k): c for k, c in S.circ(e2, 1, tau).items()}
    # levelwise: 12 o_1 12 = 123 and 12 o_1 21 = 312
    assert s0_circ(E, 1, T) == (3, 1, 2)
    assert got == {"123*[312]": 1}
    unit = S.unit_element()
    assert S.compose(unit, 1, {tau: 1}) == {tau: 1}


def test_aw_diagonal():
    S = BarOperad(3, 3)
    e = (E,)
    assert aw(e) == {(e, e): 1}
    tau = from_bar_word(E, [T])
    assert aw(tau) == {((E,), (E, T)): 1, ((E, T), (T,)): 1}
    H = aw_diagonal(S)
    assert H.coassociativity_report().ok
    assert check_morphism(H.diag).ok


def test_identity_morphism_and_sign_corruption():
    S = BarOperad(2, 3)
    assert check_morphism(identity_morphism(S)).ok
    tau = parse_bar_label("12*[21]")
    bad = OperadMorphism(S, S, lambda k: {k: -1} if k == tau else {k: 1}, "bad")
    rep = check_morphism(bad)
    assert not rep.ok and "12*[21]" in rep.first().instance


@pytest.mark.parametrize("O", [make_S0(3), make_susp(-1, 4), BarOperad(2, 2)], ids=lambda O: O.name)
def test_dump_round_trip(O):
    first = json.dumps(operad_to_json(O), sort_keys=True)
    T_ = operad_from_json(json.loads(first))
    assert json.dumps(operad_to_json(T_), sort_keys=True) == first
    assert check_axioms(T_).ok


def test_malformed_dump():
    with pytest.raises(ValueError):
        operad_from_json({"name": "x"})


@given(st.sampled_from(BarOperad(3, 3).all_basis(2)), st.sampled_from(BarOperad(3, 3).all_basis(2)),
       st.integers(1, 2))
def test_bar_composition_is_equivariant_and_leibniz(a, b, i):
    S = BarOperad(3, 3)
    if S.degree(a) + S.degree(b) > 3:
        return
    ab = S.circ(a, i, b)
    assert all(S.degree(k) == S.degree(a) + S.degree(b) for k in ab)
    if S.degree(a) + S.degree(b) >= 1:
        s = -1 if S.degree(a) % 2 else 1
        lhs = S.d_lc(ab)
        rhs = S.compose(S.d(a), i, {b: 1})
        for k, c in S.compose({a: 1}, i, S.d(b)).items():
            rhs[k] = rhs.get(k, 0) + s * c
        assert lhs == {k: c for k, c in rhs.items() if c}
