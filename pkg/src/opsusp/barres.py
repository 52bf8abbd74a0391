"""Normalized bar resolutions of Z over Z[S_n].

Basis elements are stored homogeneously: a tuple ``(s_0, ..., s_k)`` of
permutations with consecutive entries distinct.  The inhomogeneous name
``g*[g_1|...|g_k]`` has ``g = s_0`` and ``g_t = s_{t-1}^{-1} s_t``.  In this
form the differential is the alternating sum of faces (degenerate faces
dropped), the left action multiplies every entry, and the contracting
homotopy prepends the identity.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Protocol, Sequence, Tuple

from .chaincore import (AbelianGroup, ChainComplex, GradedMap, TruncationWindow, WindowError,
                        boundary_of_map, homology)
from .lincomb import Key, LinComb, add_into, add_to, apply_linear
from .snf import smith_decomposition
from .symgrp import Perm, all_perms, compose, identity, inverse, parse_perm_label, perm_label, sign

BarKey = Tuple[Perm, ...]

DEFAULT_BASIS_CAP = 250_000


def basis_cap() -> int:
    return int(os.environ.get("OPSUSP_MAX_BASIS", DEFAULT_BASIS_CAP))


# -- words -----------------------------------------------------------------

def to_bar_word(x: BarKey) -> Tuple[Perm, Tuple[Perm, ...]]:
    """Homogeneous tuple -> (g, [g_1, ..., g_k])."""
    letters = tuple(compose(inverse(x[t - 1]), x[t]) for t in range(1, len(x)))
    return x[0], letters


def from_bar_word(g: Perm, letters: Sequence[Perm]) -> BarKey:
    out = [g]
    for h in letters:
        if h == identity(len(g)):
            raise ValueError("normalized bar words have no identity letters")
        out.append(compose(out[-1], h))
    return tuple(out)


def bar_label(x: BarKey) -> str:
    g, letters = to_bar_word(x)
    return perm_label(g) + "*[" + "|".join(perm_label(h) for h in letters) + "]"


def parse_bar_label(text: str) -> BarKey:
    head, _, rest = text.partition("*[")
    if not rest.endswith("]"):
        raise ValueError(f"bad bar label {text!r}")
    body = rest[:-1]
    letters = [parse_perm_label(t) for t in body.split("|")] if body else []
    return from_bar_word(parse_perm_label(head), letters)


def is_degenerate(x: BarKey) -> bool:
    return any(x[t] == x[t + 1] for t in range(len(x) - 1))


def bar_d(x: BarKey) -> LinComb:
    out: LinComb = {}
    if len(x) == 1:
        return out
    for t in range(len(x)):
        y = x[:t] + x[t + 1:]
        if not is_degenerate(y):
            add_to(out, y, -1 if t % 2 else 1)
    return out


def bar_act(g: Perm, x: BarKey) -> BarKey:
    return tuple(compose(g, s) for s in x)


def bar_h(x: BarKey) -> LinComb:
    e = identity(len(x[0]))
    if x[0] == e:
        return {}
    return {(e,) + x: 1}


def bar_basis(n: int, d: int) -> List[BarKey]:
    perms = all_perms(n)
    level: List[BarKey] = [(p,) for p in perms]
    for _ in range(d):
        level = [x + (p,) for x in level for p in perms if p != x[-1]]
    return level


def bar_generators(n: int, d: int) -> List[BarKey]:
    """Free Z[S_n]-generators (first entry the identity) in degree d."""
    e = identity(n)
    perms = all_perms(n)
    level: List[BarKey] = [(e,)]
    for _ in range(d):
        level = [x + (p,) for x in level for p in perms if p != x[-1]]
    return level


def basis_count(n: int, d: int) -> int:
    import math
    f = math.factorial(n)
    return f * (f - 1) ** d


# -- the resolution --------------------------------------------------------

@dataclass(frozen=True)
class BarResolution:
    n: int
    window: TruncationWindow
    complex: ChainComplex

    def augmentation(self, x: Key) -> int:
        return 1 if len(x) == 1 else 0

    def eta_eps(self, x: Key) -> LinComb:
        return {(identity(self.n),): 1} if len(x) == 1 else {}

    def homotopy(self, x: Key) -> LinComb:
        return bar_h(x)

    def act(self, g: Perm, x: Key) -> LinComb:
        return {bar_act(g, x): 1}

    def generators(self, d: int) -> List[BarKey]:
        return bar_generators(self.n, d)

    def unit(self) -> BarKey:
        return (identity(self.n),)

    def label(self, x: Key) -> str:
        return bar_label(x)

    def with_differential(self, diff: Mapping[Key, Mapping[Key, int]]) -> "BarResolution":
        C = self.complex
        basis = {d: C.basis(d) for d in C.degrees()}
        return replace(self, complex=ChainComplex(basis, diff, C.window, C.name, C.labeler))


def build_bar(n: int, max_degree: int) -> BarResolution:
    if n < 1:
        raise ValueError("n must be positive")
    if max_degree < 0:
        raise WindowError("max_degree must be nonnegative")
    # S_1 has no non-identity letters, so RS_1 is Z in degree 0 and ends there.
    window = TruncationWindow(0, max_degree, None, n > 1)
    total = sum(basis_count(n, d) for d in range(max_degree + 1)) if n > 1 else 1
    if total > basis_cap():
        raise MemoryError(f"RS_{n} up to degree {max_degree} has {total} basis elements; "
                          f"cap is {basis_cap()} (set OPSUSP_MAX_BASIS to raise)")
    basis = {d: bar_basis(n, d) for d in range(max_degree + 1)} if n > 1 else {0: [(identity(1),)]}
    diff = {x: bar_d(x) for ks in basis.values() for x in ks}
    C = ChainComplex(basis, diff, window, f"RS{n}", bar_label)
    return BarResolution(n, window, C)


def contracting_homotopy_check(res: BarResolution) -> bool:
    """d h + h d = id - eta eps on every degree whose d h is stored."""
    return not contracting_homotopy_failures(res)


def contracting_homotopy_failures(res: BarResolution) -> List[BarKey]:
    C = res.complex
    top = res.window.homology_top()
    bad = []
    for d in range(0, top + 1):
        for x in C.basis(d):
            lhs = C.d_lc(res.homotopy(x))
            add_into(lhs, apply_linear(res.homotopy, C.d(x)))
            rhs = {x: 1}
            add_into(rhs, res.eta_eps(x), -1)
            if lhs != rhs:
                bad.append(x)
    return bad


# -- group (co)homology ----------------------------------------------------

COEFFICIENTS = ("trivial", "sign")


def _character(coefficients: str) -> Callable[[Perm], int]:
    if coefficients == "trivial":
        return lambda g: 1
    if coefficients == "sign":
        return sign
    raise ValueError(f"coefficients must be one of {COEFFICIENTS}")


def orbit_matrix(n: int, d: int, coefficients: str) -> Dict[BarKey, LinComb]:
    """Generator-level differential of Z_chi (x) RS_n in degree d."""
    chi = _character(coefficients)
    out = {}
    for x in bar_generators(n, d):
        col: LinComb = {}
        for y, c in bar_d(x).items():
            g = y[0]
            add_to(col, bar_act(inverse(g), y), chi(g) * c)
        out[x] = col
    return out


def coinvariant_complex(n: int, max_degree: int, coefficients: str = "trivial") -> ChainComplex:
    basis = {d: bar_generators(n, d) for d in range(max_degree + 1)}
    diff = {}
    for d in range(1, max_degree + 1):
        diff.update(orbit_matrix(n, d, coefficients))
    return ChainComplex(basis, diff, TruncationWindow(0, max_degree, None, n > 1),
                        f"Z⊗RS{n}", bar_label)


def cochain_complex(n: int, top: int, coefficients: str = "trivial") -> ChainComplex:
    """Hom over Z[S_n] from RS_n to Z_chi, cochain degree k placed in degree -k.

    Cochain degrees 0..top are included, so cohomology is determined for
    degrees up to top - 1.
    """
    basis = {-d: [("δ",) + x for x in bar_generators(n, d)] for d in range(top + 1)}
    diff: Dict[Key, LinComb] = {}
    for d in range(1, top + 1):
        for x, col in orbit_matrix(n, d, coefficients).items():
            for y, c in col.items():
                add_to(diff.setdefault(("δ",) + y, {}), ("δ",) + x, c)
    return ChainComplex(basis, diff, TruncationWindow(-top, 0, None, False),
                        f"Hom(RS{n},Z_{coefficients})", lambda k: "δ" + bar_label(k[1:]))


def group_homology(n: int, coefficients: str, lo: int, hi: int,
                   cohomology: bool = False) -> List[AbelianGroup]:
    if lo < 0:
        raise WindowError("group (co)homology starts in degree 0")
    if n == 1:
        return [AbelianGroup(1 if k == 0 else 0) for k in range(lo, hi + 1)]
    if not cohomology:
        return homology(coinvariant_complex(n, hi + 1, coefficients), lo, hi)
    C = cochain_complex(n, hi + 1, coefficients)
    return list(reversed(homology(C, -hi, -lo)))


@dataclass(frozen=True)
class CocycleReport:
    degree: int
    coefficients: str
    is_equivariant: bool
    is_cocycle: bool
    order: Optional[int]  # 0 means infinite order, None when not a cocycle
    group: Optional[AbelianGroup]

    @property
    def nonzero(self) -> bool:
        return bool(self.is_cocycle and self.order not in (None, 1))


def cochain_class(n: int, k: int, values: Callable[[BarKey], int],
                  coefficients: str) -> CocycleReport:
    """Classify a degree-k cochain on RS_n, given on all basis elements.

    ``values`` is first tested for equivariance against the chosen
    coefficient module; if it is equivariant we test the cocycle condition
    and compute the order of its class.
    """
    chi = _character(coefficients)
    equivariant = all(values(bar_act(g, x)) == chi(g) * values(x)
                      for x in bar_generators(n, k) for g in all_perms(n))
    if not equivariant:
        return CocycleReport(k, coefficients, False, False, None, None)
    gens_k = bar_generators(n, k)
    phi = [values(x) for x in gens_k]
    up = orbit_matrix(n, k + 1, coefficients)
    cocycle = all(sum(c * values(y) for y, c in col.items()) == 0 for col in up.values())
    group = group_homology(n, coefficients, k, k, cohomology=True)[0]
    if not cocycle:
        return CocycleReport(k, coefficients, True, False, None, group)
    if k == 0:
        order = 1 if not any(phi) else 0
        return CocycleReport(k, coefficients, True, True, order, group)
    # coboundary matrix delta^{k-1}: rows gens_k, cols gens_{k-1}
    gens_prev = bar_generators(n, k - 1)
    pidx = {x: j for j, x in enumerate(gens_prev)}
    down = orbit_matrix(n, k, coefficients)
    A = [[0] * len(gens_prev) for _ in gens_k]
    for i, x in enumerate(gens_k):
        for y, c in down[x].items():
            A[i][pidx[y]] += c
    order = _class_order(A, phi)
    return CocycleReport(k, coefficients, True, True, order, group)


def _class_order(A: List[List[int]], phi: List[int]) -> int:
    """Order of phi modulo the column span of A (0 for infinite)."""
    from math import gcd
    U, D, _ = smith_decomposition(A)
    m = len(A)
    u = [sum(U[i][j] * phi[j] for j in range(m)) for i in range(m)]
    order = 1
    ncols = len(A[0]) if A else 0
    for i in range(m):
        d = D[i][i] if i < ncols else 0
        if d:
            need = d // gcd(d, u[i])
            order = order * need // gcd(order, need)
        elif u[i]:
            return 0
    return order


# -- equivariant lifting ---------------------------------------------------

class LiftTarget(Protocol):
    complex: ChainComplex

    def act(self, g: Perm, key: Key) -> LinComb: ...

    def homotopy(self, key: Key) -> LinComb: ...

    def eta_eps(self, key: Key) -> LinComb: ...


def homotopy_failures(target: LiftTarget, degrees: Sequence[int]) -> List[Key]:
    C = target.complex
    bad = []
    for d in degrees:
        for x in C.basis(d):
            lhs = C.d_lc(target.homotopy(x))
            add_into(lhs, apply_linear(target.homotopy, C.d(x)))
            rhs = {x: 1}
            add_into(rhs, target.eta_eps(x), -1)
            if lhs != rhs:
                bad.append(x)
    return bad


def act_lc(target: LiftTarget, g: Perm, lc: Mapping[Key, int]) -> LinComb:
    return apply_linear(lambda k: target.act(g, k), lc)


class EquivariantLift:
    """Degree-by-degree lift of a seed on the degree-0 generator.

    Values on a free generator are ``K(u(d x))``; values on ``g x`` are
    ``g u(x)``.  Computation is lazy and cached so large windows are only
    paid for when used.
    """

    def __init__(self, n: int, target: LiftTarget, seed: Mapping[Key, int],
                 check_degrees: Optional[Sequence[int]] = None):
        self.n = n
        self.target = target
        self.seed = dict(seed)
        if check_degrees is not None:
            bad = homotopy_failures(target, check_degrees)
            if bad:
                raise ValueError(f"target homotopy fails dK + Kd = id - eta eps at "
                                 f"{target.complex.label(bad[0])}")
        self._gen: Dict[BarKey, LinComb] = {}

    def on_generator(self, x: BarKey) -> LinComb:
        v = self._gen.get(x)
        if v is None:
            if len(x) == 1:
                v = dict(self.seed)
            else:
                v = apply_linear(self.target.homotopy, self.apply(bar_d(x)))
            self._gen[x] = v
        return v

    def __call__(self, x: BarKey) -> LinComb:
        g = x[0]
        base = self.on_generator(bar_act(inverse(g), x))
        if g == identity(self.n):
            return base
        return act_lc(self.target, g, base)

    def apply(self, lc: Mapping[Key, int]) -> LinComb:
        return apply_linear(self, lc)


def equivariant_lift(source: BarResolution, target: LiftTarget,
                     seed: Mapping[Key, int]) -> GradedMap:
    """Materialize the lift on the whole source window and check it."""
    top = source.window.max_degree
    lift = EquivariantLift(source.n, target, seed,
                           check_degrees=range(target.complex.window.min_degree, top))
    cols = {x: lift(x) for x in source.complex.keys()}
    f = GradedMap(source.complex, target.complex, 0, cols, "lift")
    if not boundary_of_map(f).is_zero():
        raise ValueError("lifted map is not a chain map; the seed is not a chain-map germ")
    return f


class BarSelfTarget:
    """RS_n viewed as a lift target with its own contracting homotopy."""

    def __init__(self, res: BarResolution):
        self.res = res
        self.complex = res.complex

    def act(self, g, key):
        return self.res.act(g, key)

    def homotopy(self, key):
        h = self.res.homotopy(key)
        return {k: c for k, c in h.items() if k in self.complex}

    def eta_eps(self, key):
        return self.res.eta_eps(key)
