"""The operad whose components are the bar resolutions RS_n.

Compositions are levelwise compositions in S0 of two simplices, summed over
the Eilenberg-Zilber shuffles of the pair, with degenerate simplices dropped.
The diagonal is Alexander-Whitney: front faces tensor back faces.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from ..barres import BarKey, bar_act, bar_basis, bar_d, bar_label, basis_cap, basis_count, is_degenerate
from ..chaincore import tensor_label
from ..lincomb import LinComb, add_to
from ..symgrp import identity
from .base import Operad, OperadMorphism, Report
from .examples import S0, s0_circ
from .tensor import TensorOperad


@lru_cache(maxsize=None)
def shuffle_paths(p: int, q: int) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], int], ...]:
    """Lattice paths from (0,0) to (p,q) with their shuffle signs.

    A step in the first coordinate picks up one sign for every earlier
    step in the second coordinate.
    """
    out = []
    for pos in itertools.combinations(range(p + q), p):
        chosen = set(pos)
        i = j = 0
        flips = 0
        path = [(0, 0)]
        for t in range(p + q):
            if t in chosen:
                i += 1
                flips += j
            else:
                j += 1
            path.append((i, j))
        out.append((tuple(path), -1 if flips % 2 else 1))
    return tuple(out)


def bar_circ(a: BarKey, i: int, b: BarKey) -> LinComb:
    out: LinComb = {}
    for path, s in shuffle_paths(len(a) - 1, len(b) - 1):
        simplex = tuple(s0_circ(a[x], i, b[y]) for x, y in path)
        if not is_degenerate(simplex):
            add_to(out, simplex, s)
    return out


class BarOperad(Operad):
    """RS_n for ranks up to ``max_rank`` and degrees up to ``max_degree``."""

    truncated = True

    def __init__(self, max_rank: int = 3, max_degree: int = 3):
        total = sum(basis_count(n, d) for n in range(2, max_rank + 1) for d in range(max_degree + 1))
        if total > basis_cap():
            raise MemoryError(f"bar operad window has {total} basis elements (cap {basis_cap()})")
        self.name = "S"
        self.max_rank = max_rank
        self.max_degree = max_degree
        self._basis: Dict[Tuple[int, int], List[BarKey]] = {}

    def degree_range(self, n):
        return (0, 0) if n == 1 else (0, self.max_degree)

    def basis(self, n, d):
        if not self.in_window(n, d):
            return ()
        key = (n, d)
        if key not in self._basis:
            self._basis[key] = bar_basis(n, d)
        return self._basis[key]

    def rank(self, key):
        return len(key[0])

    def degree(self, key):
        return len(key) - 1

    def d(self, key):
        return bar_d(key)

    def act(self, sigma, key):
        return {bar_act(sigma, key): 1}

    def _circ(self, a, i, b):
        return bar_circ(a, i, b)

    def unit_element(self):
        return {((1,),): 1}

    def label(self, key):
        return bar_label(key)

    def generator(self, n: int, *letters) -> BarKey:
        from ..barres import from_bar_word
        return from_bar_word(identity(n), letters)


def make_bar_operad(max_rank: int = 3, max_degree: int = 3) -> BarOperad:
    return BarOperad(max_rank, max_degree)


def augmentation_to_S0(S: BarOperad, max_rank: Optional[int] = None) -> OperadMorphism:
    """Projection onto degree 0, where RS_n agrees with Z[S_n]."""
    target = S0(max_rank or S.max_rank)
    return OperadMorphism(S, target, lambda x: {x[0]: 1} if len(x) == 1 else {}, "ε")


def aw(x: BarKey) -> LinComb:
    return {(x[:i + 1], x[i:]): 1 for i in range(len(x))}


class HopfOperadStructure:
    """An operad with a diagonal morphism into its tensor square."""

    def __init__(self, base: Operad, diag: OperadMorphism):
        self.base = base
        self.diag = diag

    def coassociativity_report(self, max_rank: Optional[int] = None) -> Report:
        O = self.base
        rep = Report(f"coassociativity of {self.diag.name}")
        R = O.max_rank if max_rank is None else min(max_rank, O.max_rank)
        for n in range(1, R + 1):
            for x in O.all_basis(n):
                left: LinComb = {}
                right: LinComb = {}
                for (u, v), c in self.diag(x).items():
                    for (u1, u2), c1 in self.diag(u).items():
                        add_to(left, (u1, u2, v), c * c1)
                    for (v1, v2), c2 in self.diag(v).items():
                        add_to(right, (u, v1, v2), c * c2)
                rep.expect("coassociativity", lambda: f"Δ on {O.label(x)}", left, right,
                           lambda lc: str(sorted((tensor_label(*(O.label(k) for k in t)), c)
                                                 for t, c in lc.items())))
        return rep


def aw_diagonal(S: BarOperad) -> HopfOperadStructure:
    target = TensorOperad(S, S)
    return HopfOperadStructure(S, OperadMorphism(S, target, aw, "Δ"))
