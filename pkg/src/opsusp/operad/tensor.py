"""Tensor products of operads."""

from __future__ import annotations

from ..chaincore import tensor_label
from ..lincomb import LinComb, add_to
from .base import Operad


class TensorOperad(Operad):
    """(A x B)(n) = A(n) x B(n), diagonal action, and

    (a x b) o_i (c x d) = (-1)^(|b||c|) (a o_i c) x (b o_i d).
    """

    def __init__(self, A: Operad, B: Operad, name: str = ""):
        self.A = A
        self.B = B
        self.name = name or f"{A.name}⊗{B.name}"
        self.max_rank = min(A.max_rank, B.max_rank)
        self.truncated = A.truncated or B.truncated

    def degree_range(self, n):
        la, ha = self.A.degree_range(n)
        lb, hb = self.B.degree_range(n)
        return (la + lb, ha + hb)

    def basis(self, n, d):
        if not 1 <= n <= self.max_rank:
            return ()
        out = []
        for da in self.A.degrees(n):
            bs = self.B.basis(n, d - da)
            if not bs:
                continue
            for a in self.A.basis(n, da):
                for b in bs:
                    out.append((a, b))
        return out

    def rank(self, key):
        return self.A.rank(key[0])

    def degree(self, key):
        return self.A.degree(key[0]) + self.B.degree(key[1])

    def d(self, key):
        a, b = key
        out: LinComb = {}
        for x, c in self.A.d(a).items():
            add_to(out, (x, b), c)
        s = -1 if self.A.degree(a) % 2 else 1
        for y, c in self.B.d(b).items():
            add_to(out, (a, y), s * c)
        return out

    def act(self, sigma, key):
        out: LinComb = {}
        for x, c in self.A.act(sigma, key[0]).items():
            for y, e in self.B.act(sigma, key[1]).items():
                add_to(out, (x, y), c * e)
        return out

    def _circ(self, left, i, right):
        a, b = left
        c, d = right
        s = -1 if (self.B.degree(b) * self.A.degree(c)) % 2 else 1
        out: LinComb = {}
        ac = self.A.circ(a, i, c)
        if not ac:
            return out
        bd = self.B.circ(b, i, d)
        for x, u in ac.items():
            for y, v in bd.items():
                add_to(out, (x, y), s * u * v)
        return out

    def unit_element(self):
        out: LinComb = {}
        for x, u in self.A.unit_element().items():
            for y, v in self.B.unit_element().items():
                add_to(out, (x, y), u * v)
        return out

    def label(self, key):
        return tensor_label(self.A.label(key[0]), self.B.label(key[1]))


def tensor_operads(A: Operad, B: Operad) -> TensorOperad:
    return TensorOperad(A, B)


def iterated_suspension(base: Operad, k: int) -> Operad:
    """Susp^(±1) x (... x base), |k| layers; k < 0 desuspends."""
    from .examples import Susp

    out = base
    direction = 1 if k > 0 else -1
    for j in range(1, abs(k) + 1):
        out = TensorOperad(Susp(direction, base.max_rank), out, f"Σ^{direction * j}{base.name}")
    return out


def suspension_layers(O: Operad) -> tuple:
    """(signed suspension index, innermost operad) of a nested suspension."""
    from .examples import Susp

    k = 0
    while isinstance(O, TensorOperad) and isinstance(O.A, Susp):
        k += O.A.direction
        O = O.B
    return k, O


def strip_key(key, layers: int):
    """The innermost key under ``layers`` suspension factors."""
    for _ in range(layers):
        key = key[1]
    return key


def wrap_key(key, gens):
    """Inverse of ``strip_key``: ``gens`` lists the outer generators, outermost first."""
    for g in reversed(gens):
        key = (g, key)
    return key
