"""Sparse integer linear combinations keyed by hashable basis labels.

A linear combination is a plain ``dict`` mapping basis keys to nonzero
integers.  The helpers here never store zero coefficients, so equality of
two combinations is ordinary dict equality.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, Mapping, Tuple

Key = Hashable
LinComb = Dict[Key, int]


def add_to(acc: LinComb, key: Key, coeff: int) -> None:
    """Add ``coeff * key`` into ``acc`` in place."""
    if not coeff:
        return
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        del acc[key]


def add_into(acc: LinComb, other: Mapping[Key, int], scale: int = 1) -> None:
    if not scale:
        return
    for k, c in other.items():
        add_to(acc, k, scale * c)


def lc_sum(terms: Iterable[Tuple[int, Mapping[Key, int]]]) -> LinComb:
    out: LinComb = {}
    for s, lc in terms:
        add_into(out, lc, s)
    return out


def scale(lc: Mapping[Key, int], s: int) -> LinComb:
    if not s:
        return {}
    return {k: s * c for k, c in lc.items()}


def sub(a: Mapping[Key, int], b: Mapping[Key, int]) -> LinComb:
    out = dict(a)
    add_into(out, b, -1)
    return out


def apply_linear(fn: Callable[[Key], Mapping[Key, int]], lc: Mapping[Key, int]) -> LinComb:
    """Extend a function on basis keys linearly."""
    out: LinComb = {}
    for k, c in lc.items():
        add_into(out, fn(k), c)
    return out


def bilinear(fn: Callable[[Key, Key], Mapping[Key, int]],
             a: Mapping[Key, int], b: Mapping[Key, int]) -> LinComb:
    out: LinComb = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            add_into(out, fn(ka, kb), ca * cb)
    return out
