"""Permutations in one-line notation, block sums and T-maps.

A permutation of ``{1..n}`` is a tuple ``p`` with ``p[i-1]`` the image of
``i``.  Products act on the left: ``compose(p, q)`` first applies ``q``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

Perm = Tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(int(v) for v in p)
    if not p or not is_perm(p):
        raise ValueError(f"not a permutation in one-line form: {list(p)}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``: i -> p(q(i))."""
    if len(p) != len(q):
        raise ValueError(f"size mismatch: S_{len(p)} vs S_{len(q)}")
    return tuple(p[j - 1] for j in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def parity(p: Perm) -> int:
    """Inversion-count parity, 0 for even and 1 for odd."""
    inv = 0
    n = len(p)
    for i in range(n):
        pi = p[i]
        for j in range(i + 1, n):
            if pi > p[j]:
                inv += 1
    return inv & 1


def sign(p: Perm) -> int:
    return -1 if parity(p) else 1


@lru_cache(maxsize=None)
def all_perms(n: int) -> Tuple[Perm, ...]:
    """All of S_n, identity first, in lexicographic order."""
    return tuple(itertools.permutations(range(1, n + 1)))


def block_sum(taus: Iterable[Perm]) -> Perm:
    """tau_1 + ... + tau_k acting blockwise on consecutive intervals."""
    out: List[int] = []
    off = 0
    for t in taus:
        out.extend(v + off for v in t)
        off += len(t)
    return tuple(out)


@dataclass(frozen=True)
class CompositionShape:
    """A list of nonnegative block sizes alpha_1..alpha_n."""

    alpha: Tuple[int, ...]

    def __post_init__(self):
        if any(a < 0 for a in self.alpha):
            raise ValueError("block sizes must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.alpha)

    def offsets(self) -> Tuple[int, ...]:
        acc, out = 0, []
        for a in self.alpha:
            out.append(acc)
            acc += a
        return tuple(out)

    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """The consecutive position blocks L_1..L_n."""
        return tuple(tuple(range(o + 1, o + a + 1))
                     for o, a in zip(self.offsets(), self.alpha))


def tmap(alpha: Sequence[int] | CompositionShape, sigma: Perm) -> Perm:
    """Permute the blocks of ``alpha`` according to ``sigma``.

    In one-line form the result is ``L_sigma(1) + ... + L_sigma(n)``, so the
    block sitting at slot ``j`` of the rearranged shape is sent to slot
    ``sigma(j)``.
    """
    shape = alpha if isinstance(alpha, CompositionShape) else CompositionShape(tuple(alpha))
    if len(shape.alpha) != len(sigma):
        raise ValueError(f"shape of length {len(shape.alpha)} vs S_{len(sigma)}")
    blocks = shape.blocks()
    out: List[int] = []
    for j in sigma:
        out.extend(blocks[j - 1])
    return tuple(out)


def slot_shape(m: int, i: int, n: int) -> Tuple[int, ...]:
    """The shape (1,..,1,n,1,..,1) of length m with n at slot i."""
    shape = [1] * m
    shape[i - 1] = n
    return tuple(shape)


def t_slot(n: int, i: int, sigma: Perm) -> Perm:
    """T_i(sigma): tmap with a single block of size n at slot i."""
    return tmap(slot_shape(len(sigma), i, n), sigma)


def to_cycles(p: Perm) -> List[Tuple[int, ...]]:
    seen = set()
    cycles = []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start - 1]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j - 1]
        if len(cyc) > 1:
            cycles.append(tuple(cyc))
    return cycles


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Perm:
    img = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            img[a - 1] = b
    return check_perm(img)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Parse '3,1,2' (one-line) or '(1 4)(2 5)' (cycles, needs ``n`` or infers max)."""
    text = text.strip()
    if text.startswith("("):
        cycles = [tuple(int(t) for t in re.split(r"[\s,]+", c.strip()) if t)
                  for c in _CYCLE_RE.findall(text)]
        size = n if n is not None else max((max(c) for c in cycles if c), default=1)
        return from_cycles(cycles, size)
    parts = [t for t in re.split(r"[\s,]+", text) if t]
    if len(parts) == 1 and len(parts[0]) > 1:
        parts = list(parts[0])
    return check_perm(int(t) for t in parts)


def perm_label(p: Perm) -> str:
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return "<" + ",".join(str(v) for v in p) + ">"


def parse_perm_label(text: str) -> Perm:
    if text.startswith("<"):
        return check_perm(int(t) for t in text[1:-1].split(","))
    return check_perm(int(c) for c in text)
