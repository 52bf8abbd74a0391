"""Suspension of operads: the isomorphisms I, the collapse tau, and V, U."""

from __future__ import annotations

from typing import Dict, List, Optional

from .barres import CocycleReport, cochain_class
from .chaincore import ChainComplex, TruncationWindow
from .coalg import (ContractionTarget, PointedCoalgebra, interval_complex, make_interval,
                    same_operad)
from .lincomb import Key, LinComb, add_to, apply_linear
from .operad import (BarOperad, CoEnd, Operad, OperadMorphism, Report, SubOperad, Susp,
                     TensorOperad, aw, check_morphism, coend_pair, identity_morphism,
                     iterated_suspension)
from .symgrp import all_perms, sign


def unit_sphere(direction: int) -> ChainComplex:
    """Z concentrated in degree ``direction`` (one key, sigma)."""
    return ChainComplex({direction: ["σ"]}, {},
                        TruncationWindow(direction, direction, truncated=False),
                        "Σℤ" if direction > 0 else "Σ⁻¹ℤ", str)


def susp_witness(direction: int = 1, max_rank: int = 5) -> OperadMorphism:
    """Susp^(±1) -> CoEnd(Sigma^(±1) Z), s_n -> (sigma -> sigma^n)."""
    P = Susp(direction, max_rank)
    T = CoEnd(unit_sphere(direction), max_rank)
    return OperadMorphism(P, T, lambda k: {("σ", ("σ",) * k[1]): 1}, f"w{P.sym}")


def coend_sphere_signs(direction: int = 1, max_total: int = 5) -> Dict[tuple, int]:
    """Brute-force composition signs of CoEnd(Sigma^(±1) Z): (n, m, i) -> sign."""
    T = CoEnd(unit_sphere(direction), max_total)
    out = {}
    for n in range(1, max_total + 1):
        for m in range(1, max_total + 2 - n):
            a = ("σ", ("σ",) * n)
            b = ("σ", ("σ",) * m)
            for i in range(1, m + 1):
                (key, c), = T.circ(a, i, b).items()
                out[(n, m, i)] = c
    return out


# -- suspension isomorphisms --------------------------------------------------

class SuspensionIso(OperadMorphism):
    """x -> s_n (x) x from A to Susp^(±1) (x) A, of degree ±(n-1) in rank n."""

    def __init__(self, base: Operad, direction: int = 1):
        if direction not in (1, -1):
            raise ValueError("direction must be ±1")
        self.base = base
        self.direction = direction
        self.shifted = iterated_suspension(base, direction)
        gen = self.shifted.A.gen
        super().__init__(base, self.shifted, lambda x: {(gen(base.rank(x)), x): 1},
                         "𝓘" if direction > 0 else "𝓘⁻")

    def inverse(self, key) -> LinComb:
        return {key[1]: 1}


def make_suspension_iso(A: Operad, direction: int = 1) -> SuspensionIso:
    return SuspensionIso(A, direction)


def iterate_iso(A: Operad, direction: int, times: int):
    """The composite of ``times`` suspension isomorphisms, as a key function."""
    isos = []
    O = A
    for _ in range(times):
        iso = SuspensionIso(O, direction)
        isos.append(iso)
        O = iso.shifted

    def fn(x):
        lc = {x: 1}
        for iso in isos:
            lc = iso.apply(lc)
        return lc

    return fn, O


def check_suspension_iso(A: Operad, direction: int = 1, times: int = 1,
                         max_rank: Optional[int] = None) -> Report:
    """The equivariance and composition identities of the k-fold isomorphism.

    For k = times, I(g x) = sign(g)^k g I(x), and
    I(a o_i b) = (-1)^e I(a) o_i I(b) with
    e = k((m-1)|a| + (n-1)(i-1)) + C(k,2)(n-1)(m-1).
    """
    fn, T = iterate_iso(A, direction, times)
    rep = Report(f"{times}-fold suspension isomorphism of {A.name}")
    R = A.max_rank if max_rank is None else min(max_rank, A.max_rank)
    k = times
    for n in range(1, R + 1):
        for x in A.all_basis(n):
            for g in all_perms(n):
                lhs = apply_linear(fn, A.act(g, x))
                rhs = {key: c * sign(g) ** k for key, c in T.act_lc(g, fn(x)).items()}
                rep.expect("equivariance", lambda: f"I({g}·{A.label(x)})", lhs, rhs, T.lc_label)
    for n in range(1, R + 1):
        for m in range(1, R + 2 - n):
            for a in A.all_basis(n):
                for b in A.all_basis(m):
                    for i in range(1, m + 1):
                        try:
                            ab = A.circ(a, i, b)
                            rhs = T.compose(fn(a), i, fn(b))
                        except ValueError:
                            rep.skip("composition")
                            continue
                        e = k * ((m - 1) * A.degree(a) + (n - 1) * (i - 1))
                        e += k * (k - 1) // 2 * (n - 1) * (m - 1)
                        lhs = {key: c * (-1 if e % 2 else 1)
                               for key, c in apply_linear(fn, ab).items()}
                        rep.expect("composition",
                                   lambda: f"I({A.label(a)} ∘_{i} {A.label(b)})",
                                   lhs, rhs, T.lc_label)
    return rep


def coend_suspension_iso(C: ChainComplex, max_rank: int = 3) -> OperadMorphism:
    """The suspension isomorphism CoEnd(C) -> CoEnd(Sigma C), through the pairing."""
    from .chaincore import suspend

    Z = unit_sphere(1)
    src = CoEnd(C, max_rank)
    tgt = CoEnd(suspend(C, 1), max_rank)

    def fn(key):
        x, t = key
        s, _, _ = coend_pair(Z, C, ("σ", ("σ",) * len(t)), key)
        return {key: s}

    return OperadMorphism(src, tgt, fn, "𝓘")


# -- tau and V ----------------------------------------------------------------

def kernel_preserving(max_rank: int = 3) -> SubOperad:
    """Maps of the interval sending both vertices into the ideal of vertices."""
    base = CoEnd(interval_complex(), max_rank)

    def keep(key):
        x, t = key
        return x == "q" or any(y != "q" for y in t)

    return SubOperad(base, keep, "CoEnd(I)'")


def make_tau(max_rank: int = 3) -> OperadMorphism:
    """tau: reads off the coefficient of q -> q^n (the top cell of the quotient)."""
    src = kernel_preserving(max_rank)
    P = Susp(1, max_rank)

    def fn(key):
        x, t = key
        if x == "q" and all(y == "q" for y in t):
            return {P.gen(len(t)): 1}
        return {}

    return OperadMorphism(src, P, fn, "τ")


def tau_surjective(tau: OperadMorphism, max_rank: Optional[int] = None) -> Dict[int, bool]:
    R = tau.source.max_rank if max_rank is None else max_rank
    out = {}
    for n in range(1, R + 1):
        hit = set()
        for k in tau.source.all_basis(n):
            hit.update(tau(k))
        out[n] = tau.target.gen(n) in hit
    return out


class VMorphism(OperadMorphism):
    """V = (tau (x) 1)(u (x) 1) Delta from S to Susp (x) S."""

    def __init__(self, S: BarOperad, interval: Optional[PointedCoalgebra] = None,
                 flip: Optional[Key] = None):
        self.S = S
        self.interval = interval or make_interval(S)
        if not same_operad(self.interval.operad, S):
            raise ValueError("interval lives over a different operad")
        self.tau = make_tau(S.max_rank)
        self.flip = flip
        target = iterated_suspension(S, 1)
        super().__init__(S, target, self._value, "𝔙" if flip is None else "𝔙[flip]")

    def _value(self, a):
        out: LinComb = {}
        for (a1, a2), c in aw(a).items():
            for f, e in self.interval.adjoint_value(a1).items():
                for s, v in self.tau(f).items():
                    add_to(out, (s, a2), c * e * v)
        if self.flip is not None and a == self.flip:
            out = {k: -c for k, c in out.items()}
        return out

    def table(self, max_degree: Optional[int] = None) -> Dict[Key, LinComb]:
        out = {}
        for n in range(1, self.S.max_rank + 1):
            for d in self.S.degrees(n):
                if max_degree is not None and d > max_degree:
                    continue
                for a in self.S.basis(n, d):
                    out[a] = self(a)
        return out

    def cochain_value(self, a) -> int:
        """Coefficient of the cocycle (1 (x) eps) V on a cell of degree n-1."""
        return sum(c for (s, b), c in self(a).items() if len(b) == 1)

    def cocycle(self, n: int, coefficients: str = "sign") -> CocycleReport:
        if n - 1 > self.S.max_degree:
            raise ValueError(f"rank {n} needs degree {n - 1} in the window")
        return cochain_class(n, n - 1, self.cochain_value, coefficients)


def make_V(S: Optional[BarOperad] = None, interval: Optional[PointedCoalgebra] = None,
           vertex: str = "p0", flip: Optional[Key] = None) -> VMorphism:
    S = S or BarOperad(3, 3)
    if interval is None:
        interval = make_interval(S, vertex=vertex)
    return VMorphism(S, interval, flip)


def check_V_triangle(V: VMorphism, max_rank: Optional[int] = None) -> Report:
    """(I (x) 1) Delta I^-1 V = (V (x) 1) Delta on the window."""
    S = V.S
    rep = Report("V triangle")
    R = S.max_rank if max_rank is None else min(max_rank, S.max_rank)
    fmt = str
    for n in range(1, R + 1):
        for a in S.all_basis(n):
            lhs: LinComb = {}
            for (s, b), c in V(a).items():
                for (b1, b2), e in aw(b).items():
                    add_to(lhs, ((s, b1), b2), c * e)
            rhs: LinComb = {}
            for (a1, a2), c in aw(a).items():
                for k, e in V(a1).items():
                    add_to(rhs, (k, a2), c * e)
            rep.expect("triangle", lambda: S.label(a), lhs, rhs, fmt)
    return rep


def lift_seed_difference(S: BarOperad, max_degree: Optional[int] = None) -> List[Key]:
    """Cells where V built from the two vertex contractions disagrees."""
    V0 = make_V(S, vertex="p0")
    V1 = make_V(S, vertex="p1")
    return [a for a, v in V0.table(max_degree).items() if V1(a) != v]


# -- U ------------------------------------------------------------------------

def epsilon(n: int) -> int:
    """Sign of s'_n (x) s_n under Susp^-1 (x) Susp -> CoEnd(Z), via the pairing."""
    s, _, _ = coend_pair(unit_sphere(-1), unit_sphere(1),
                         ("σ", ("σ",) * n), ("σ", ("σ",) * n))
    return s


def make_U(S: BarOperad, V: Optional[VMorphism] = None) -> OperadMorphism:
    """U: Sigma^-1 S -> S, the desuspension of V followed by Susp^-1 (x) Susp = Com."""
    V = V or make_V(S)
    src = iterated_suspension(S, -1)

    def fn(key):
        gen, a = key
        n = gen[1]
        e = epsilon(n)
        out: LinComb = {}
        for (s, b), c in V(a).items():
            add_to(out, b, e * c)
        return out

    return OperadMorphism(src, S, fn, "𝔘")


def U_power(S: BarOperad, k: int, base_level: int = 0,
            V: Optional[VMorphism] = None) -> OperadMorphism:
    """Sigma^-(base+k) S -> Sigma^-base S, the k-fold composite of U.

    Each U acts at the innermost level; the outer ``base_level`` factors
    ride along unchanged.
    """
    src = iterated_suspension(S, -(base_level + k))
    tgt = iterated_suspension(S, -base_level)
    if k == 0:
        f = identity_morphism(src)
        f.name = "id"
        return f
    U = make_U(S, V)

    def inner(key, depth):
        # U^depth on Sigma^-depth S
        if depth == 0:
            return {key: 1}
        gen, rest = key
        out: LinComb = {}
        for y, c in inner(rest, depth - 1).items():
            for z, e in U((gen, y)).items():
                add_to(out, z, c * e)
        return out

    def fn(key):
        gens = []
        for _ in range(base_level):
            gens.append(key[0])
            key = key[1]
        out: LinComb = {}
        for y, c in inner(key, k).items():
            for g in reversed(gens):
                y = (g, y)
            add_to(out, y, c)
        return out

    return OperadMorphism(src, tgt, fn, f"𝔘^{k}" if k > 1 else "𝔘")


def check_V(V: VMorphism, max_rank: Optional[int] = None) -> Report:
    return check_morphism(V, max_rank)


def grading_failures(V: VMorphism) -> List[Key]:
    """Cells of rank n and degree < n-1 with nonzero image (there should be none)."""
    S = V.S
    return [a for n in range(1, S.max_rank + 1) for d in S.degrees(n) if d < n - 1
            for a in S.basis(n, d) if V(a)]
