import random

from hypothesis import given, strategies as st

from opsusp.snf import (dense_invariants, integer_kernel, integer_solve, invariant_factors, matmul,
                        smith_decomposition)

from .oracles import sympy_invariants

matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m,
                       max_size=m)))


def triplets(A):
    return [(i, j, v) for i, row in enumerate(A) for j, v in enumerate(row) if v]


def test_two_by_two_example():
    assert dense_invariants([[2, 4], [6, 8]]) == [2, 4]
    assert invariant_factors([(0, 0, 2)], 1, 1) == [2]
    assert invariant_factors([], 3, 3) == []


@given(matrices)
def test_invariants_match_sympy(A):
    m, n = len(A), len(A[0])
    want = sympy_invariants(A, m, n)
    assert dense_invariants(A) == want
    assert invariant_factors(triplets(A), m, n) == want


@given(matrices)
def test_decomposition_transforms(A):
    U, D, V = smith_decomposition(A)
    assert matmul(matmul(U, A), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            assert i == j or v == 0


@given(matrices)
def test_kernel_and_solve(A):
    n = len(A[0])
    for z in integer_kernel(A, n):
        assert all(sum(r[j] * z[j] for j in range(n)) == 0 for r in A)
    rng = random.Random(len(A) * 31 + n)
    x = [rng.randint(-3, 3) for _ in range(n)]
    b = [sum(r[j] * x[j] for j in range(n)) for r in A]
    y = integer_solve(A, b, n)
    assert y is not None and [sum(r[j] * y[j] for j in range(n)) for r in A] == b


def test_unsolvable_system():
    assert integer_solve([[2]], [1], 1) is None


def test_sparse_path_on_large_unit_block():
    n = 60
    entries = [(i, i, 1) for i in range(n)] + [(i, i + 1, 3) for i in range(n - 1)]
    entries.append((n - 1, 0, 5))
    A = [[0] * n for _ in range(n)]
    for i, j, v in entries:
        A[i][j] = v
    assert invariant_factors(entries, n, n) == sympy_invariants(A, n, n)
