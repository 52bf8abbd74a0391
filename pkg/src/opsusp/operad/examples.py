"""Small operads with closed-form structure: S0, Coassoc, Susp and its inverse."""

from __future__ import annotations

from typing import Dict, Mapping, Sequence, Tuple

from ..lincomb import Key, LinComb
from ..symgrp import Perm, all_perms, block_sum, compose, identity, perm_label, sign, slot_shape, tmap
from .base import Operad


def s0_circ(a: Perm, i: int, b: Perm) -> Perm:
    """a inserted at slot i of b in the symmetric-group operad."""
    n, m = len(a), len(b)
    taus = [identity(1)] * m
    taus[i - 1] = a
    return compose(block_sum(taus), tmap(slot_shape(m, i, n), b))


def s0_gamma(taus: Sequence[Perm], sigma: Perm) -> Perm:
    """Direct formula: (tau_1 + ... + tau_k) after T_(i_1..i_k)(sigma)."""
    return compose(block_sum(taus), tmap(tuple(len(t) for t in taus), sigma))


class S0(Operad):
    """Z[S_n] in degree 0, left multiplication, block-sum composition."""

    def __init__(self, max_rank: int = 4):
        self.name = "S0"
        self.max_rank = max_rank

    def degree_range(self, n):
        return (0, 0)

    def basis(self, n, d):
        return all_perms(n) if d == 0 and 1 <= n <= self.max_rank else ()

    def rank(self, key):
        return len(key)

    def degree(self, key):
        return 0

    def d(self, key):
        return {}

    def act(self, sigma, key):
        return {compose(sigma, key): 1}

    def _circ(self, a, i, b):
        return {s0_circ(a, i, b): 1}

    def unit_element(self):
        return {(1,): 1}

    def label(self, key):
        return perm_label(key)


class Coassoc(Operad):
    """One generator b_n per rank, trivial action, b_n o_i b_m = b_(n+m-1)."""

    def __init__(self, max_rank: int = 6):
        self.name = "Coassoc"
        self.max_rank = max_rank

    def degree_range(self, n):
        return (0, 0)

    def basis(self, n, d):
        return (("b", n),) if d == 0 and 1 <= n <= self.max_rank else ()

    def rank(self, key):
        return key[1]

    def degree(self, key):
        return 0

    def d(self, key):
        return {}

    def act(self, sigma, key):
        return {key: 1}

    def _circ(self, a, i, b):
        return {("b", a[1] + b[1] - 1): 1}

    def unit_element(self):
        return {("b", 1): 1}

    def label(self, key):
        return f"b{key[1]}"


class Susp(Operad):
    """The suspension operad (direction +1) or its inverse (direction -1).

    Rank n is one generator in degree direction*(n-1); permutations act by
    their sign and s_n o_i s_m = (-1)^((i-1)(n-1)) s_(n+m-1).
    """

    def __init__(self, direction: int = 1, max_rank: int = 5):
        if direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        self.direction = direction
        self.sym = "s" if direction == 1 else "s'"
        self.name = "Susp" if direction == 1 else "Susp⁻¹"
        self.max_rank = max_rank

    def gen(self, n: int) -> Tuple[str, int]:
        return (self.sym, n)

    def degree_range(self, n):
        d = self.direction * (n - 1)
        return (d, d)

    def basis(self, n, d):
        if 1 <= n <= self.max_rank and d == self.direction * (n - 1):
            return (self.gen(n),)
        return ()

    def rank(self, key):
        return key[1]

    def degree(self, key):
        return self.direction * (key[1] - 1)

    def d(self, key):
        return {}

    def act(self, sigma, key):
        return {key: sign(sigma)}

    def composition_sign(self, n: int, i: int) -> int:
        return -1 if ((i - 1) * (n - 1)) % 2 else 1

    def _circ(self, a, i, b):
        n, m = a[1], b[1]
        return {self.gen(n + m - 1): self.composition_sign(n, i)}

    def unit_element(self):
        return {self.gen(1): 1}

    def label(self, key):
        return f"{key[0]}{key[1]}"


def make_S0(max_rank: int = 4) -> S0:
    return S0(max_rank)


def make_coassoc(max_rank: int = 6) -> Coassoc:
    return Coassoc(max_rank)


def make_susp(direction: int = 1, max_rank: int = 5) -> Susp:
    return Susp(direction, max_rank)


class TableOperad(Operad):
    """An operad read back from a dump: every value is a stored table entry.

    Compositions missing from the table were outside the dumped window and
    raise ``TruncationError``.
    """

    def __init__(self, name: str, max_rank: int, bases: Mapping[int, Mapping[int, Sequence[str]]],
                 diff: Mapping[str, LinComb], action: Mapping[Tuple[Perm, str], LinComb],
                 table: Mapping[Tuple[str, int, str], LinComb], unit: LinComb,
                 truncated: bool = True):
        from .base import TruncationError  # local to keep the import surface small
        self._trunc_error = TruncationError
        self.name = name
        self.max_rank = max_rank
        self.truncated = truncated
        self._bases = {int(n): {int(d): tuple(ks) for d, ks in bs.items()} for n, bs in bases.items()}
        self._rank: Dict[str, int] = {}
        self._degree: Dict[str, int] = {}
        for n, bs in self._bases.items():
            for d, ks in bs.items():
                for k in ks:
                    self._rank[k] = n
                    self._degree[k] = d
        self._diff = {k: dict(v) for k, v in diff.items()}
        self._action = {k: dict(v) for k, v in action.items()}
        self._table = {k: dict(v) for k, v in table.items()}
        self._unit = dict(unit)

    def degree_range(self, n):
        ds = sorted(self._bases.get(n, {}))
        return (ds[0], ds[-1]) if ds else (0, -1)

    def basis(self, n, d):
        return self._bases.get(n, {}).get(d, ())

    def rank(self, key):
        return self._rank[key]

    def degree(self, key):
        return self._degree[key]

    def d(self, key):
        return self._diff.get(key, {})

    def act(self, sigma, key):
        try:
            return self._action[(tuple(sigma), key)]
        except KeyError:
            raise KeyError(f"no stored action of {sigma} on {key}") from None

    def _circ(self, a, i, b):
        try:
            return self._table[(a, i, b)]
        except KeyError:
            raise self._trunc_error(f"{a} ∘_{i} {b} not in stored table") from None

    def unit_element(self):
        return dict(self._unit)

    def label(self, key):
        return key
