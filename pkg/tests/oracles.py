"""Independent reference computations used only by the tests.

Each oracle is written from the definitions with a different algorithm from
the package code, so agreement is evidence rather than tautology.
"""

from itertools import permutations

import sympy
from sympy.matrices.normalforms import smith_normal_form


def sympy_invariants(rows, nrows, ncols):
    """Nonzero Smith invariants via sympy."""
    if nrows == 0 or ncols == 0:
        return []
    M = sympy.zeros(nrows, ncols)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            M[i, j] = v
    D = smith_normal_form(M, domain=sympy.ZZ)
    out = [abs(int(D[i, i])) for i in range(min(nrows, ncols)) if D[i, i] != 0]
    return sorted(out)


def homology_oracle(C, d):
    """(free rank, torsion) of H_d from dense boundary matrices and sympy."""
    def dense(k):
        return [[0] * C.dim(k) for _ in range(C.dim(k - 1))] if C.dim(k) and C.dim(k - 1) else []

    def fill(k):
        M = dense(k)
        for r, c, v in C.matrix(k):
            M[r][c] = v
        return M

    n = C.dim(d)
    out_inv = sympy_invariants(fill(d), C.dim(d - 1), n) if n and C.dim(d - 1) else []
    in_inv = sympy_invariants(fill(d + 1), n, C.dim(d + 1)) if n and C.dim(d + 1) else []
    free = n - len(out_inv) - len(in_inv)
    return free, tuple(t for t in in_inv if t != 1)


def tmap_oracle(alpha, sigma):
    """T_alpha(sigma) from output segments: segment j has size alpha[sigma(j)]."""
    offsets = [sum(alpha[:i]) for i in range(len(alpha))]
    out = []
    for j in sigma:
        for r in range(alpha[j - 1]):
            out.append(offsets[j - 1] + r + 1)
    return tuple(out)


def perm_sign_by_inversions(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def koszul_sign_bubble(sigma, degrees):
    """Sign of moving factor j to slot sigma(j), by adjacent swaps."""
    n = len(sigma)
    targets = list(sigma)
    degs = list(degrees)
    sign = 1
    for i in range(n):
        for j in range(n - 1 - i):
            if targets[j] > targets[j + 1]:
                if degs[j] % 2 and degs[j + 1] % 2:
                    sign = -sign
                targets[j], targets[j + 1] = targets[j + 1], targets[j]
                degs[j], degs[j + 1] = degs[j + 1], degs[j]
    return sign


def all_perms_oracle(n):
    return sorted(tuple(p) for p in permutations(range(1, n + 1)))
