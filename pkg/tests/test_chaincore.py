import random

import pytest
from hypothesis import given, strategies as st

from opsusp import barres
from opsusp.acceptance import random_complex, random_map
from opsusp.chaincore import (AbelianGroup, ChainComplex, Element, GradedMap, TruncationWindow,
                              WindowError, boundary_of_map, complex_from_json, complex_to_json,
                              differential_map, homology, identity_map, is_chain_map, is_quasi_iso,
                              quasi_iso_witness, shift_map, suspend, susp_iso_L, susp_iso_M,
                              tensor_complex, tensor_map, transpose)
from opsusp.coalg import interval_complex

from .oracles import homology_oracle

seeds = st.integers(min_value=0, max_value=10**6)


def two_cell(m=2):
    return ChainComplex({0: ["x"], 1: ["y"]}, {"y": {"x": m}},
                        TruncationWindow(0, 1, truncated=False), "C", str)


def test_window_must_be_nonempty():
    with pytest.raises(WindowError):
        TruncationWindow(2, 1)


def test_basis_outside_window_rejected():
    with pytest.raises(WindowError):
        ChainComplex({3: ["z"]}, {}, TruncationWindow(0, 1), "bad", str)


def test_differential_of_wrong_degree_rejected():
    with pytest.raises(ValueError):
        ChainComplex({0: ["x"], 1: ["y"]}, {"y": {"y": 1}}, TruncationWindow(0, 1), "bad", str)


def test_interval_tensor_square():
    I = interval_complex()
    II = tensor_complex(I, I)
    assert II.basis(2) == (("q", "q"),)
    want = {("p1", "q"): 1, ("p0", "q"): -1, ("q", "p1"): -1, ("q", "p0"): 1}
    assert II.d(("q", "q")) == want


def test_tensor_with_zero_differential_factor():
    A = ChainComplex({1: ["a"]}, {}, TruncationWindow(1, 1, truncated=False), "A", str)
    B = two_cell(3)
    AB = tensor_complex(A, B)
    assert AB.d(("a", "y")) == {("a", "x"): -3}


def test_bar_tensor_square_has_d_squared_zero():
    R = barres.build_bar(2, 3).complex
    assert not tensor_complex(R, R).check_d_squared()


def test_tensor_map_sign_on_odd_input():
    I = interval_complex()
    f = identity_map(I)
    g = GradedMap(I, I, 1, {"p0": {"q": 1}}, "g")
    fg = tensor_map(f, g)
    assert fg(("q", "p0")) == {("q", "q"): -1}
    assert fg(("p1", "p0")) == {("p1", "q"): 1}


def test_interchange_with_odd_middle_maps():
    rng = random.Random(7)
    A, B, C, D = (random_complex(rng, n) for n in "ABCD")
    f2 = random_map(rng, A, B, 1, "f2")
    g2 = random_map(rng, C, D, 0, "g2")
    f1 = random_map(rng, B, A, 0, "f1")
    g1 = random_map(rng, D, C, 1, "g1")
    lhs = tensor_map(f1, g1).compose(tensor_map(f2, g2))
    rhs = -1 * tensor_map(f1.compose(f2), g1.compose(g2))
    assert lhs.columns == rhs.columns


def test_boundary_of_identity_and_differential():
    C = two_cell()
    assert boundary_of_map(identity_map(C)).is_zero()
    assert boundary_of_map(differential_map(C)).is_zero()


def test_transpose_signs():
    I = interval_complex()
    T = transpose(I, I)
    assert T(("q", "q")) == {("q", "q"): -1}
    assert T(("p0", "q")) == {("q", "p0"): 1}


def test_transpose_is_involution_on_bar_squares():
    R = barres.build_bar(2, 3).complex
    T = transpose(R, R)
    TT = transpose(R, R).compose(T)
    assert all(TT(k) == {k: 1} for k in T.source.keys())
    assert is_chain_map(T)


def test_suspension_of_two_cell():
    C = two_cell()
    SC = suspend(C, 1)
    assert SC.degree("y") == 2 and SC.d("y") == {"x": -2}
    assert suspend(C, 0) is C
    assert suspend(SC, -1) == C
    assert is_chain_map(shift_map(C, 1))
    assert is_chain_map(shift_map(C, -3))


def test_suspension_isomorphisms():
    R = barres.build_bar(2, 2).complex
    I = interval_complex()
    for k in (1, 2):
        L = susp_iso_L(R, I, k)
        M = susp_iso_M(R, I, k)
        assert is_chain_map(L) and is_chain_map(M)
    M1 = susp_iso_M(I, I, 1)
    assert M1(("q", "p0")) == {("q", "p0"): -1}
    M2 = susp_iso_M(I, I, 2)
    assert all(v == {k: 1} for k, v in M2.columns.items())


def test_homology_examples():
    pt = ChainComplex({0: ["x"]}, {}, TruncationWindow(0, 0, truncated=False), "pt", str)
    assert homology(pt, 0, 0) == [AbelianGroup(1)]
    assert homology(two_cell(2), 0, 1) == [AbelianGroup(0, (2,)), AbelianGroup(0)]
    assert homology(interval_complex(), 0, 1) == [AbelianGroup(1), AbelianGroup(0)]


def test_homology_refuses_undetermined_top():
    R = barres.build_bar(2, 3).complex
    with pytest.raises(WindowError, match="truncated"):
        homology(R, 0, 3)


def test_quasi_iso_examples():
    I = interval_complex()
    assert is_quasi_iso(identity_map(I), 0, 1)
    zero = GradedMap(I, I, 0, {}, "0")
    assert quasi_iso_witness(zero, 0, 1) == 0
    pt = ChainComplex({0: ["1"]}, {}, TruncationWindow(0, 3, truncated=False), "Z", str)
    R = barres.build_bar(2, 4).complex
    aug = GradedMap(R, pt, 0, {x: {"1": 1} for x in R.basis(0)}, "ε")
    assert is_quasi_iso(aug, 0, 3)


def test_element_arithmetic():
    C = two_cell(5)
    y = Element(C, 1, {"y": 1})
    assert (2 * y).boundary() == Element(C, 0, {"x": 10})
    with pytest.raises(ValueError):
        Element(C, 0, {"y": 1})


def test_complex_json_round_trip():
    C = barres.build_bar(3, 2).complex
    data = complex_to_json(C)
    again = complex_to_json(complex_from_json(data))
    assert again == data


@given(seeds)
def test_random_complexes_square_to_zero(seed):
    C = random_complex(random.Random(seed), "C", -1, 3)
    assert not C.check_d_squared()


@given(seeds)
def test_homology_matches_sympy_oracle(seed):
    C = random_complex(random.Random(seed), "C", 0, 4)
    for d, g in zip(range(0, 5), homology(C, 0, 4)):
        assert (g.free_rank, g.torsion) == homology_oracle(C, d)


@given(seeds)
def test_homology_invariant_under_basis_permutation(seed):
    rng = random.Random(seed)
    C = random_complex(rng, "C", 0, 3)
    basis = {d: list(C.basis(d)) for d in C.degrees()}
    for ks in basis.values():
        rng.shuffle(ks)
    P = ChainComplex(basis, {k: C.d(k) for k in C.keys()}, C.window, "P", str)
    assert homology(P, 0, 3) == homology(C, 0, 3)


@given(seeds, st.integers(-1, 1), st.integers(-1, 1))
def test_leibniz_for_composites(seed, df, dg):
    rng = random.Random(seed)
    A, B, C = (random_complex(rng, n, 0, 3) for n in "ABC")
    g = random_map(rng, A, B, dg, "g")
    f = random_map(rng, B, C, df, "f")
    lhs = boundary_of_map(f.compose(g))
    s = -1 if df % 2 else 1
    rhs = boundary_of_map(f).compose(g) + s * f.compose(boundary_of_map(g))
    assert lhs.columns == rhs.columns


@given(seeds, st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1))
def test_interchange_law(seed, a, b, c, d):
    rng = random.Random(seed)
    A, B, C, D, E, F = (random_complex(rng, n, 0, 2) for n in "ABCDEF")
    f2, g2 = random_map(rng, A, B, a, "f2"), random_map(rng, C, D, b, "g2")
    f1, g1 = random_map(rng, B, E, c, "f1"), random_map(rng, D, F, d, "g1")
    lhs = tensor_map(f1, g1).compose(tensor_map(f2, g2))
    s = -1 if (a * d) % 2 else 1
    assert lhs.columns == (s * tensor_map(f1.compose(f2), g1.compose(g2))).columns


@given(seeds, st.integers(-3, 3))
def test_suspend_round_trip(seed, k):
    C = random_complex(random.Random(seed), "C")
    assert suspend(suspend(C, k), -k) == C
    assert not suspend(C, k).check_d_squared()


@given(seeds)
def test_transpose_is_chain_involution(seed):
    rng = random.Random(seed)
    A, B = random_complex(rng, "A", 0, 2), random_complex(rng, "B", 0, 2)
    T = transpose(A, B)
    assert is_chain_map(T)
    back = transpose(B, A).compose(T)
    assert all(back(k) == {k: 1} for k in T.source.keys())
