"""Coendomorphism and endomorphism operads of a finite complex.

Basis elements are elementary maps.  In ``CoEnd(C)`` the key ``(x, t)``
sends the basis element ``x`` to the tensor word ``t`` and kills every other
basis element; ``a o_i b = (1^(i-1) x a x 1) b``.  In ``End(C)`` the key
``(t, x)`` sends ``t`` to ``x``; ``a o_i b = (-1)^(|a||b|) b (1^(i-1) x a x 1)``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, List, Tuple

from ..chaincore import ChainComplex, WindowError, koszul_permute, tensor_complex, tensor_label
from ..lincomb import Key, LinComb, add_to
from .base import Operad, OperadMorphism
from .tensor import TensorOperad

DEFAULT_COMPONENT_CAP = 50_000


class _HomOperad(Operad):
    truncated = False

    def __init__(self, C: ChainComplex, max_rank: int, name: str):
        if C.window.truncated:
            raise WindowError(f"{C.name} is truncated; Hom operads need a finite complex")
        self.C = C
        self.max_rank = max_rank
        self.name = name
        self._keys = tuple(C.keys())
        self._words: Dict[int, List[Tuple[Key, ...]]] = {}
        for n in range(1, max_rank + 1):
            if len(self._keys) ** (n + 1) > DEFAULT_COMPONENT_CAP:
                raise MemoryError(f"{name}: rank {n} component too large")

    def word_degree(self, t) -> int:
        return sum(self.C.degree(x) for x in t)

    def words(self, n: int) -> List[Tuple[Key, ...]]:
        if n not in self._words:
            self._words[n] = list(itertools.product(self._keys, repeat=n))
        return self._words[n]

    def degree_range(self, n):
        degs = [self.C.degree(x) for x in self._keys] or [0]
        lo, hi = min(degs), max(degs)
        return (n * lo - hi, n * hi - lo)

    def word_d(self, t) -> LinComb:
        out: LinComb = {}
        pre = 0
        for j, x in enumerate(t):
            s = -1 if pre % 2 else 1
            for y, c in self.C.d(x).items():
                add_to(out, t[:j] + (y,) + t[j + 1:], s * c)
            pre += self.C.degree(x)
        return out

    def word_co_d(self, t) -> LinComb:
        """All words s with t appearing in d(s), mapped to that coefficient."""
        out: LinComb = {}
        pre = 0
        for j, x in enumerate(t):
            s = -1 if pre % 2 else 1
            for y, c in self.C.coboundary_terms(x).items():
                add_to(out, t[:j] + (y,) + t[j + 1:], s * c)
            pre += self.C.degree(x)
        return out


class CoEnd(_HomOperad):
    def __init__(self, C: ChainComplex, max_rank: int = 3, name: str = ""):
        super().__init__(C, max_rank, name or f"CoEnd({C.name})")

    def basis(self, n, d):
        if not 1 <= n <= self.max_rank:
            return ()
        return [(x, t) for x in self._keys for t in self.words(n)
                if self.word_degree(t) - self.C.degree(x) == d]

    def rank(self, key):
        return len(key[1])

    def degree(self, key):
        return self.word_degree(key[1]) - self.C.degree(key[0])

    def d(self, key):
        x, t = key
        out: LinComb = {}
        for u, c in self.word_d(t).items():
            add_to(out, (x, u), c)
        s = -1 if self.degree(key) % 2 else 1
        for y, c in self.C.coboundary_terms(x).items():
            add_to(out, (y, t), -s * c)
        return out

    def act(self, sigma, key):
        x, t = key
        s, u = koszul_permute(sigma, t, self.C.degree)
        return {(x, u): s}

    def _circ(self, a, i, b):
        xa, ta = a
        xb, tb = b
        if tb[i - 1] != xa:
            return {}
        pre = self.word_degree(tb[:i - 1])
        s = -1 if (self.degree(a) * pre) % 2 else 1
        return {(xb, tb[:i - 1] + ta + tb[i:]): s}

    def unit_element(self):
        return {(x, (x,)): 1 for x in self._keys}

    def label(self, key):
        x, t = key
        return f"[{self.C.label(x)}↦{tensor_label(*(self.C.label(y) for y in t))}]"

    # evaluation of a general element on a basis element of C
    def evaluate(self, f: LinComb, x: Key) -> LinComb:
        out: LinComb = {}
        for (y, t), c in f.items():
            if y == x:
                add_to(out, t, c)
        return out


class End(_HomOperad):
    def __init__(self, C: ChainComplex, max_rank: int = 3, name: str = ""):
        super().__init__(C, max_rank, name or f"End({C.name})")

    def basis(self, n, d):
        if not 1 <= n <= self.max_rank:
            return ()
        return [(t, x) for t in self.words(n) for x in self._keys
                if self.C.degree(x) - self.word_degree(t) == d]

    def degree_range(self, n):
        lo, hi = super().degree_range(n)
        return (-hi, -lo)

    def rank(self, key):
        return len(key[0])

    def degree(self, key):
        return self.C.degree(key[1]) - self.word_degree(key[0])

    def d(self, key):
        t, x = key
        out: LinComb = {}
        for y, c in self.C.d(x).items():
            add_to(out, (t, y), c)
        s = -1 if self.degree(key) % 2 else 1
        for u, c in self.word_co_d(t).items():
            add_to(out, (u, x), -s * c)
        return out

    def act(self, sigma, key):
        t, x = key
        s, u = koszul_permute(sigma, t, self.C.degree)
        return {(u, x): s}

    def _circ(self, a, i, b):
        ta, xa = a
        tb, xb = b
        if tb[i - 1] != xa:
            return {}
        pre = self.word_degree(tb[:i - 1])
        da = self.degree(a)
        # The Koszul sign for writing b after a keeps d a derivation in the
        # first operand, matching every other operad here.
        s = -1 if (da * pre + da * self.degree(b)) % 2 else 1
        return {(tb[:i - 1] + ta + tb[i:], xb): s}

    def unit_element(self):
        return {((x,), x): 1 for x in self._keys}

    def label(self, key):
        t, x = key
        return f"[{tensor_label(*(self.C.label(y) for y in t))}↦{self.C.label(x)}]"


def make_coend(C: ChainComplex, max_rank: int = 3) -> CoEnd:
    return CoEnd(C, max_rank)


def make_end(C: ChainComplex, max_rank: int = 3) -> End:
    return End(C, max_rank)


def shuffle_words(ta, tb, deg_a, deg_b) -> Tuple[int, Tuple]:
    """(a_1..a_n) x (b_1..b_n) -> (a_1 x b_1, ..., a_n x b_n) with Koszul sign."""
    flips = 0
    suffix = 0
    for j in range(len(ta) - 1, -1, -1):
        flips += deg_b(tb[j]) * suffix
        suffix += deg_a(ta[j])
    return (-1 if flips % 2 else 1), tuple(zip(ta, tb))


def coend_pair(A: ChainComplex, B: ChainComplex, fa, fb) -> Tuple[int, Tuple, Tuple]:
    """Image of the pair of elementary maps ``fa``, ``fb`` in CoEnd(A x B).

    Returns ``(sign, source, word)``: the elementary map sends the pair
    ``source`` to ``word``.
    """
    (xa, ta), (xb, tb) = fa, fb
    deg_b = B.degree
    fb_degree = sum(deg_b(y) for y in tb) - deg_b(xb)
    s = -1 if (fb_degree * A.degree(xa)) % 2 else 1
    s2, word = shuffle_words(ta, tb, A.degree, deg_b)
    return s * s2, (xa, xb), word


def coend_pairing(A: ChainComplex, B: ChainComplex, max_rank: int = 3) -> OperadMorphism:
    """The morphism CoEnd(A) x CoEnd(B) -> CoEnd(A x B)."""
    CA, CB = CoEnd(A, max_rank), CoEnd(B, max_rank)
    AB = tensor_complex(A, B)
    target = CoEnd(AB, max_rank)
    source = TensorOperad(CA, CB)

    def fn(key):
        s, x, word = coend_pair(A, B, key[0], key[1])
        return {(x, word): s}

    return OperadMorphism(source, target, fn, "𝔈")
