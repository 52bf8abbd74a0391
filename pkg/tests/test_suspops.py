import pytest
from hypothesis import given, strategies as st

from opsusp import coalg, suspops as sp
from opsusp.barres import parse_bar_label
from opsusp.operad import BarOperad, check_morphism, make_coassoc, make_S0

P = parse_bar_label


@pytest.fixture(scope="module")
def V3(S3):
    return sp.make_V(S3)


def image(V, label):
    S = V.S
    return {(k[0], S.label(k[1])): c for k, c in V(P(label)).items()}


@pytest.mark.parametrize("times", [1, 2])
@pytest.mark.parametrize("direction", [1, -1])
def test_suspension_iso_identities_on_bar(times, direction, S2):
    rep = sp.check_suspension_iso(S2, direction, times)
    assert rep.ok, rep.summary()
    assert rep.checked["composition"] and rep.checked["equivariance"]


@pytest.mark.parametrize("make", [lambda: make_S0(3), lambda: make_coassoc(4)])
def test_suspension_iso_identities_elsewhere(make):
    for times in (1, 2, 3):
        assert sp.check_suspension_iso(make(), 1, times).ok


def test_suspension_iso_inverse(S2):
    iso = sp.make_suspension_iso(S2)
    x = P("12*[21]")
    (k, c), = iso(x).items()
    assert c == 1 and k[0] == ("s", 2) and iso.inverse(k) == {x: 1}
    with pytest.raises(ValueError):
        sp.make_suspension_iso(S2, 2)


def test_tau_is_surjective_morphism():
    tau = sp.make_tau(3)
    assert sp.tau_surjective(tau) == {1: True, 2: True, 3: True}
    assert check_morphism(tau).ok


def test_kernel_preserving_is_closed():
    K = sp.kernel_preserving(3)
    assert all(K.keep(k) for k in K.all_basis(2))
    assert ("p0", ("q", "q")) not in set(K.all_basis(2))
    assert ("q", ("q", "q")) in set(K.all_basis(2))


def test_V_values(V3):
    assert image(V3, "12*[]") == {}
    assert image(V3, "12*[21]") == {(("s", 2), "21*[]"): 1}
    assert image(V3, "21*[21]") == {(("s", 2), "12*[]"): -1}
    assert image(V3, "12*[21|21]") == {(("s", 2), "21*[21]"): 1}


def test_V_is_morphism_and_triangle(V3):
    assert sp.check_V(V3).ok
    assert sp.check_V_triangle(V3).ok
    assert sp.grading_failures(V3) == []


def test_flipped_V_is_rejected(S3):
    bad = sp.make_V(S3, flip=P("12*[21]"))
    assert {"chain-map", "equivariance"} <= set(sp.check_V(bad).failed_laws())


def test_V_cocycles(V3):
    two = V3.cocycle(2)
    assert two.is_equivariant and two.is_cocycle and two.order == 2
    three = V3.cocycle(3)
    assert three.is_cocycle and three.order == 3
    assert str(three.group) == "Z/3"


def test_V_cocycle_needs_sign_coefficients(V3):
    r = V3.cocycle(2, "trivial")
    assert not r.is_equivariant and not r.nonzero


def test_V_cocycle_out_of_window(S2):
    with pytest.raises(ValueError):
        sp.make_V(S2).cocycle(5)


def test_lift_seed_agrees_in_rank_two():
    assert sp.lift_seed_difference(BarOperad(2, 3)) == []


def test_other_vertex_lift_in_rank_three(S3):
    # the cocycle class survives, but this lift is not coherent in rank 3
    V1 = sp.make_V(S3, vertex="p1")
    assert V1.cocycle(3).order == 3
    assert sp.check_V(V1).failed_laws() == ["composition"]
    J = V1.interval
    rep = coalg.check_coalgebra(J)
    assert rep.failed_laws() == ["coherence"]
    assert "12*[] ∘_1 12*[21]" in rep.first().instance


def test_epsilon_values():
    assert [sp.epsilon(n) for n in range(1, 7)] == [1, 1, -1, -1, 1, 1]


@given(st.integers(1, 9))
def test_epsilon_is_reversal_sign(n):
    # reversing n-1 odd letters
    assert sp.epsilon(n) == (-1) ** ((n - 1) * (n - 2) // 2)


def test_U_is_morphism(S3):
    U = sp.make_U(S3)
    assert check_morphism(U).ok
    assert sp.U_power(S3, 0).name == "id"


@pytest.mark.parametrize("k,base", [(1, 1), (2, 0)])
def test_U_powers_are_morphisms(S2, k, base):
    rep = check_morphism(sp.U_power(S2, k, base))
    assert rep.ok, rep.summary()


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_sphere_composition_sign(n, m, data):
    if n + m - 1 > 5:
        return
    i = data.draw(st.integers(1, m))
    assert sp.coend_sphere_signs(1, 5)[(n, m, i)] == (-1) ** ((i - 1) * (n - 1))
