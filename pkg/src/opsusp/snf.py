"""Smith normal form over the integers.

Two routines live here.  ``invariant_factors`` works on large sparse
matrices: it eliminates unit pivots first (Markowitz-style choice, column by
column, shortest row wins) and only hands the leftover non-unit block to the
dense routine.  ``smith_decomposition`` is the dense routine with transforms
``U @ A @ V = D``; it is used for kernels and integral solves on small blocks.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Matrix = List[List[int]]
Triplets = Iterable[Tuple[int, int, int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in a]
    for i, row in enumerate(a):
        oi = out[i]
        for k, v in enumerate(row):
            if v:
                for j, w in enumerate(b[k]):
                    if w:
                        oi[j] += v * w
    return out


def smith_decomposition(a: Sequence[Sequence[int]], transforms: bool = True
                        ) -> Tuple[Optional[Matrix], Matrix, Optional[Matrix]]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` in Smith normal form.

    The diagonal of ``D`` is nonnegative and each entry divides the next.
    With ``transforms=False`` the unimodular factors are skipped.
    """
    A = [list(map(int, row)) for row in a]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity_matrix(m) if transforms else None
    V = identity_matrix(n) if transforms else None

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if U is not None:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            if V is not None:
                for row in V:
                    row[i], row[j] = row[j], row[i]

    def row_axpy(dst, src, q):  # row_dst -= q * row_src
        rs, rd = A[src], A[dst]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def col_axpy(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_axpy(i, t, A[i][t] // p)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_axpy(j, t, A[t][j] // p)
                    if A[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand, key=lambda c: c[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        t += 1
    return U, A, V


def dense_invariants(a: Sequence[Sequence[int]]) -> List[int]:
    _, D, _ = smith_decomposition(a, transforms=False)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def invariant_factors(entries: Triplets, nrows: int, ncols: int) -> List[int]:
    """Nonzero Smith invariants of a sparse integer matrix, ascending."""
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for r, c, v in entries:
        if not v:
            continue
        if not (0 <= r < nrows and 0 <= c < ncols):
            raise IndexError(f"entry ({r},{c}) outside {nrows}x{ncols}")
        row = rows.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            cols.get(c, set()).discard(r)
    units = 0

    def eliminate(r, c):
        prow = rows.pop(r)
        pv = prow[c]
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            f = row2[c] * pv  # pv is +-1, so pv == 1/pv
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - f * v
                if nv:
                    if c2 not in row2:
                        cols[c2].add(r2)
                    row2[c2] = nv
                else:
                    if c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
                touched.add(c2)
        for c2 in prow:
            cols[c2].discard(r)
        del cols[c]

    while True:
        progress = False
        heap = [(len(rs), c) for c, rs in cols.items() if rs]
        heapq.heapify(heap)
        while heap:
            ln, c = heapq.heappop(heap)
            rs = cols.get(c)
            if not rs:
                continue
            if len(rs) != ln:
                heapq.heappush(heap, (len(rs), c))
                continue
            best = None
            for r in rs:
                if abs(rows[r][c]) == 1:
                    lr = len(rows[r])
                    if best is None or lr < best[0] or (lr == best[0] and r < best[1]):
                        best = (lr, r)
            if best is None:
                continue
            touched: set = set()
            eliminate(best[1], c)
            units += 1
            progress = True
            for c2 in touched:
                if c2 in cols and cols[c2]:
                    heapq.heappush(heap, (len(cols[c2]), c2))
        for c in [c for c, rs in cols.items() if not rs]:
            del cols[c]
        if not progress:
            break
    rest_rows = sorted(r for r, row in rows.items() if row)
    rest_cols = sorted(cols)
    if not rest_rows:
        return [1] * units
    ci = {c: j for j, c in enumerate(rest_cols)}
    dense = [[0] * len(rest_cols) for _ in rest_rows]
    for i, r in enumerate(rest_rows):
        for c, v in rows[r].items():
            dense[i][ci[c]] = v
    return [1] * units + dense_invariants(dense)


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A Z-basis of the kernel, returned as a list of column vectors."""
    if not a:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    _, D, V = smith_decomposition(a)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def integer_solve(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> Optional[List[int]]:
    """Some integer x with A x = b, or None if no integral solution exists."""
    m = len(a)
    if m == 0:
        return [0] * ncols
    U, D, V = smith_decomposition(a)
    ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * ncols
    for i in range(m):
        d = D[i][i] if i < ncols else 0
        if d:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i]:
            return None
    return [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
