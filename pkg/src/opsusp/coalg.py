"""Coalgebras over operads.

A coalgebra is stored through its adjoint structure map ``a: O -> CoEnd(C)``:
``a(x)`` is a linear combination of elementary maps ``(c, word)``, so that
``r_n(x (x) c) = sum of words``.  Coherence, equivariance and the chain-map
condition are then exactly the statement that ``a`` is an operad morphism.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .barres import EquivariantLift, bar_act
from .chaincore import (ChainComplex, GradedMap, TruncationWindow, complex_from_json,
                        complex_to_json, is_chain_map, suspend, tensor_complex)
from .lincomb import Key, LinComb, add_to, apply_linear
from .operad import (BarOperad, CoEnd, Operad, OperadMorphism, Report, TensorOperad,
                     check_morphism, coend_pair, iterated_suspension, suspension_layers)
from .operad.examples import Susp
from .symgrp import identity

Word = Tuple[Key, ...]

COHERENCE_NAMES = {"composition": "coherence"}


def same_operad(A: Operad, B: Operad) -> bool:
    return A is B or (type(A) is type(B) and A.name == B.name and A.max_rank == B.max_rank)


class Coalgebra:
    """A coalgebra given by its adjoint structure map."""

    def __init__(self, operad: Operad, carrier: ChainComplex,
                 structure: Callable[[Key], Mapping[Tuple[Key, Word], int]],
                 name: str = "", max_rank: Optional[int] = None):
        self.operad = operad
        self.carrier = carrier
        self.name = name or carrier.name
        self.max_rank = operad.max_rank if max_rank is None else min(max_rank, operad.max_rank)
        self._structure = structure
        self._cache: Dict[Key, Dict[Key, LinComb]] = {}
        self._coend: Optional[CoEnd] = None

    # values
    def _by_source(self, a: Key) -> Dict[Key, LinComb]:
        v = self._cache.get(a)
        if v is None:
            v = {}
            for (x, t), c in self._structure(a).items():
                if c:
                    add_to(v.setdefault(x, {}), t, c)
            v = {x: img for x, img in v.items() if img}
            self._cache[a] = v
        return v

    def adjoint_value(self, a: Key) -> LinComb:
        return {(x, t): c for x, img in self._by_source(a).items() for t, c in img.items()}

    def value(self, a: Key, x: Key) -> LinComb:
        """r_n(a (x) x) as a combination of words."""
        return dict(self._by_source(a).get(x, {}))

    def apply(self, A: Mapping[Key, int], X: Mapping[Key, int]) -> LinComb:
        out: LinComb = {}
        for a, c in A.items():
            by = self._by_source(a)
            for x, e in X.items():
                for t, v in by.get(x, {}).items():
                    add_to(out, t, c * e * v)
        return out

    # the adjoint as an operad morphism
    def coend(self) -> CoEnd:
        if self._coend is None:
            self._coend = CoEnd(self.carrier, self.max_rank)
        return self._coend

    def adjoint(self) -> OperadMorphism:
        return OperadMorphism(self.operad, self.coend(), self.adjoint_value, f"a_{self.name}")

    def window_basis(self) -> Iterable[Key]:
        for n in range(1, self.max_rank + 1):
            yield from self.operad.all_basis(n)

    def word_label(self, t: Word) -> str:
        return "⊗".join(self.carrier.label(y) for y in t)

    def words_label(self, lc: Mapping[Word, int]) -> str:
        if not lc:
            return "0"
        items = sorted(lc.items(), key=lambda tc: self.word_label(tc[0]))
        return " ".join(f"{'+' if c > 0 else '-'}{'' if abs(c) == 1 else abs(c)}{self.word_label(t)}"
                        for t, c in items)

    def __repr__(self):
        return f"<Coalgebra {self.name} over {self.operad.name}>"


class PointedCoalgebra(Coalgebra):
    """A coalgebra with a basepoint in degree ``-level`` and an augmentation.

    ``augmentation`` gives the canonical surjection onto the trivial
    coalgebra on the basis of degree ``-level``.
    """

    def __init__(self, base: Coalgebra, basepoint: Key, augmentation: Mapping[Key, int],
                 level: int = 0):
        super().__init__(base.operad, base.carrier, base._structure, base.name, base.max_rank)
        self._cache = base._cache
        self.base = base
        self.basepoint = basepoint
        self.augmentation = {k: v for k, v in augmentation.items() if v}
        self.level = level
        if basepoint not in base.carrier:
            raise KeyError(f"basepoint {basepoint!r} not in {base.carrier.name}")
        if base.carrier.degree(basepoint) != -level:
            raise ValueError(f"basepoint must sit in degree {-level}")


# -- checking ---------------------------------------------------------------

def check_coalgebra(K: Coalgebra, max_rank: Optional[int] = None) -> Report:
    """Chain map, equivariance, unit and coherence of the structure maps."""
    return check_morphism(K.adjoint(), max_rank, COHERENCE_NAMES,
                          subject=f"coalgebra {K.name} over {K.operad.name}")


def tensor_power_map(f: GradedMap, t: Word) -> LinComb:
    """f^(x)n on a word, with Koszul signs for a map of any degree."""
    out: LinComb = {(): 1}
    passed = 0
    for y in t:
        nxt: LinComb = {}
        s = -1 if (f.degree * passed) % 2 else 1
        img = f(y)
        for w, c in out.items():
            for z, e in img.items():
                add_to(nxt, w + (z,), s * c * e)
        out = nxt
        passed += f.source.degree(y)
    return out


def check_coalgebra_morphism(f: GradedMap, K: Coalgebra, L: Coalgebra,
                             max_rank: Optional[int] = None, subject: str = "") -> Report:
    rep = Report(subject or f"{f.name}: {K.name} -> {L.name}")
    if not same_operad(K.operad, L.operad):
        rep.fail("operad", f"{K.operad.name} vs {L.operad.name}")
        return rep
    if f.degree != 0:
        rep.fail("degree", f"map has degree {f.degree}")
        return rep
    rep.tick("chain-map")
    if not is_chain_map(f):
        rep.fail("chain-map", f"d {f.name} != {f.name} d")
    R = min(K.max_rank, L.max_rank) if max_rank is None else min(max_rank, K.max_rank, L.max_rank)
    for n in range(1, R + 1):
        for a in K.operad.all_basis(n):
            for x in K.carrier.keys():
                lhs = apply_linear(lambda t: tensor_power_map(f, t), K.value(a, x))
                rhs = L.apply({a: 1}, f(x))
                rep.expect("structure", lambda: f"{K.operad.label(a)} on {K.carrier.label(x)}",
                           lhs, rhs, L.words_label)
    return rep


def trivial_coalgebra(operad: Operad, name: str = "ℤ") -> PointedCoalgebra:
    """Z in degree -level with r_n(a (x) 1) = eps(a) 1^n.

    ``operad`` is a (de)suspension of the bar operad; eps is the
    augmentation on the degree-0 part of the innermost bar operad.
    """
    k, inner = suspension_layers(operad)
    C = ChainComplex({0: ["1"]}, {}, TruncationWindow(0, 0, truncated=False), name, str)

    def structure(a):
        return {("1", ("1",) * len(a[0])): 1} if len(a) == 1 else {}

    K = PointedCoalgebra(Coalgebra(inner, C, structure, name), "1", {"1": 1})
    if k:
        K = chain_suspend(K, k)
        if not same_operad(K.operad, operad):
            raise ValueError(f"{operad.name} is not a suspension of the bar operad")
        K.operad = operad
    return K


def check_pointed(K: PointedCoalgebra) -> Report:
    """Basepoint inclusion and augmentation are coalgebra morphisms."""
    rep = Report(f"pointed structure of {K.name}")
    C, p = K.carrier, K.basepoint
    T = trivial_coalgebra(K.operad)
    inc = GradedMap(T.carrier, C, 0, {"1": {p: 1}}, "inclusion", check=False)
    aug = GradedMap(C, T.carrier, 0,
                    {x: {"1": K.augmentation.get(x, 0)} for x in C.basis(-K.level)},
                    "augmentation", check=False)
    rep.merge(check_coalgebra_morphism(inc, T, K), "basepoint ")
    rep.merge(check_coalgebra_morphism(aug, K, T), "augmentation ")
    rep.tick("left inverse")
    if K.augmentation.get(p) != 1:
        rep.fail("left inverse", "augmentation(basepoint) != 1")
    return rep


def bottom_key(O: Operad, n: int) -> Key:
    """The degree-bottom generator of rank n: the empty bar cell, suspended."""
    if isinstance(O, BarOperad):
        return (identity(n),)
    if isinstance(O, TensorOperad) and isinstance(O.A, Susp):
        return (O.A.gen(n), bottom_key(O.B, n))
    raise TypeError(f"no bottom generator for {O.name}")


def is_reduced(K: PointedCoalgebra) -> bool:
    p = K.basepoint
    top = bottom_key(K.operad, 2)
    for x in K.carrier.keys():
        if x == p:
            continue
        if K.value(top, x) != ({(p, x): 1, (x, p): 1} if x != p else {}):
            return False
    return True


# -- the unit interval -------------------------------------------------------

def interval_complex() -> ChainComplex:
    return ChainComplex({0: ["p0", "p1"], 1: ["q"]}, {"q": {"p1": 1, "p0": -1}},
                        TruncationWindow(0, 1, truncated=False), "I", str)


class ContractionTarget:
    """CoEnd(C)(n) with the contraction induced by a contraction of C.

    ``h`` is a degree +1 map on C with dh + hd = 1 - i p, where ``p`` sends
    a degree-0 basis element y to ``aug[y] * vertex``.  On maps,
    K(f) = h_n f + (-1)^|f| (P f) h with h_n = sum (ip)^j (x) h (x) 1 and
    P = (ip)^(x)n.
    """

    def __init__(self, C: ChainComplex, n: int, h: Mapping[Key, LinComb], vertex: Key,
                 aug: Mapping[Key, int]):
        self.C = C
        self.n = n
        self.coend = CoEnd(C, n)
        self.complex = self.coend.component(n)
        self.vertex = vertex
        self.aug = dict(aug)
        self._h = {x: dict(v) for x, v in h.items()}
        self._h_into: Dict[Key, List[Tuple[Key, int]]] = {}
        for z, img in self._h.items():
            for x, c in img.items():
                self._h_into.setdefault(x, []).append((z, c))
        self._top = (vertex,) * n

    def act(self, g, key):
        return self.coend.act(g, key)

    def _proj(self, t: Word) -> int:
        out = 1
        for y in t:
            out *= self.aug.get(y, 0)
            if not out:
                return 0
        return out

    def _h_word(self, t: Word) -> LinComb:
        out: LinComb = {}
        prefix = 1
        for j, y in enumerate(t):
            for z, c in self._h.get(y, {}).items():
                add_to(out, (self.vertex,) * j + (z,) + t[j + 1:], prefix * c)
            prefix *= self.aug.get(y, 0)
            if not prefix:
                break
        return out

    def homotopy(self, key):
        x, t = key
        out: LinComb = {}
        for u, c in self._h_word(t).items():
            add_to(out, (x, u), c)
        pt = self._proj(t)
        if pt:
            s = -1 if self.coend.degree(key) % 2 else 1
            for z, c in self._h_into.get(x, ()):
                add_to(out, (z, self._top), s * c * pt)
        return out

    def eta_eps(self, key):
        x, t = key
        if x != self.vertex or self.coend.degree(key) != 0:
            return {}
        e = self._proj(t)
        if not e:
            return {}
        return {(y, self._top): c * e for y, c in self.aug.items()}


def interval_contraction(vertex: str = "p0") -> Dict[Key, LinComb]:
    if vertex == "p0":
        return {"p1": {"q": 1}}
    if vertex == "p1":
        return {"p0": {"q": -1}}
    raise ValueError("vertex must be p0 or p1")


def aw_seed(n: int) -> LinComb:
    """The iterated Alexander-Whitney coproduct of the interval, rank n."""
    out: LinComb = {("p0", ("p0",) * n): 1, ("p1", ("p1",) * n): 1}
    for j in range(n):
        out[("q", ("p0",) * j + ("q",) + ("p1",) * (n - j - 1))] = 1
    return out


def make_interval(operad: Optional[BarOperad] = None, vertex: str = "p0",
                  max_rank: int = 3, max_degree: int = 3) -> PointedCoalgebra:
    """The unit interval as an m-coalgebra, basepoint p0.

    Rank n is the equivariant lift of the Alexander-Whitney seed through
    the contraction of the interval onto ``vertex``.
    """
    S = operad or BarOperad(max_rank, max_degree)
    C = interval_complex()
    aug = {"p0": 1, "p1": 1}
    h = interval_contraction(vertex)
    lifts: Dict[int, EquivariantLift] = {}

    def structure(a):
        n = len(a[0])
        if n not in lifts:
            lifts[n] = EquivariantLift(n, ContractionTarget(C, n, h, vertex, aug), aw_seed(n))
        return lifts[n](a)

    K = Coalgebra(S, C, structure, "I")
    return PointedCoalgebra(K, "p0", aug)


def make_sphere0(operad: Optional[BarOperad] = None, max_rank: int = 3,
                 max_degree: int = 3) -> PointedCoalgebra:
    """Two points p (the basepoint) and x; only the degree-0 cells act."""
    S = operad or BarOperad(max_rank, max_degree)
    C = ChainComplex({0: ["p", "x"]}, {}, TruncationWindow(0, 0, truncated=False), "S⁰", str)

    def structure(a):
        if len(a) != 1:
            return {}
        n = len(a[0])
        return {("p", ("p",) * n): 1, ("x", ("x",) * n): 1}

    return PointedCoalgebra(Coalgebra(S, C, structure, "S⁰"), "p", {"p": 1, "x": 1})


# -- reduction, pullback, extension -----------------------------------------

def reduce(K: PointedCoalgebra, max_rank: Optional[int] = None) -> Coalgebra:
    """C+ = C / (basepoint), with the induced structure."""
    C, p = K.carrier, K.basepoint
    if C.d(p):
        raise ValueError(f"{K.name}: basepoint is not a cycle")
    R = K.max_rank if max_rank is None else min(max_rank, K.max_rank)
    for n in range(1, R + 1):
        for a in K.operad.all_basis(n):
            for t in K.value(a, p):
                if any(y != p for y in t):
                    raise ValueError(f"{K.name}: basepoint is not a sub-coalgebra "
                                     f"({K.operad.label(a)} on {C.label(p)})")
    keys = {d: [x for x in C.basis(d) if x != p] for d in C.degrees()}
    diff = {x: {y: c for y, c in C.d(x).items() if y != p} for x in C.keys() if x != p}
    plus = ChainComplex(keys, diff, C.window, f"{C.name}⁺", C.labeler)

    def structure(a):
        out: LinComb = {}
        for (x, t), c in K.adjoint_value(a).items():
            if x != p and p not in t:
                out[(x, t)] = c
        return out

    return Coalgebra(K.operad, plus, structure, f"{K.name}⁺", K.max_rank)


def pullback(f: OperadMorphism, K: Coalgebra, level: Optional[int] = None) -> Coalgebra:
    """f*K: the structure map precomposed with f; the carrier is unchanged."""
    if not same_operad(f.target, K.operad):
        raise ValueError(f"pullback: {f.name} lands in {f.target.name}, not {K.operad.name}")

    def structure(a):
        out: LinComb = {}
        for b, c in f(a).items():
            for k, e in K.adjoint_value(b).items():
                add_to(out, k, c * e)
        return out

    name = K.name if f.name == "id" else f"{f.name}*{K.name}"
    base = Coalgebra(f.source, K.carrier, structure, name, K.max_rank)
    if isinstance(K, PointedCoalgebra):
        if level is None:
            level = K.level
        return PointedCoalgebra(base, K.basepoint, K.augmentation, level)
    return base


def extend_acyclic(K: Coalgebra, A: ChainComplex, name: str = "") -> Coalgebra:
    """K (+) A where A carries only the unit action."""
    C = K.carrier
    clash = [x for x in A.keys() if x in C]
    if clash:
        raise ValueError(f"keys {clash} occur in both summands")
    basis: Dict[int, List[Key]] = {}
    for D in (C, A):
        for d in D.degrees():
            basis.setdefault(d, []).extend(D.basis(d))
    diff = {x: D.d(x) for D in (C, A) for x in D.keys()}
    lo = min(C.window.min_degree, A.window.min_degree)
    hi = max(C.window.max_degree, A.window.max_degree)
    W = TruncationWindow(lo, hi, truncated=C.window.truncated or A.window.truncated)
    labels = {x: D.label(x) for D in (C, A) for x in D.keys()}
    Z = ChainComplex(basis, diff, W, name or f"{C.name}⊕{A.name}", labels.__getitem__)
    unit = K.operad.unit_element()

    def structure(a):
        out = dict(K.adjoint_value(a))
        c = unit.get(a, 0)
        if c:
            for y in A.keys():
                out[(y, (y,))] = c
        return out

    return Coalgebra(K.operad, Z, structure, Z.name, K.max_rank)


# -- chain suspension of coalgebras ------------------------------------------

def _unit_sphere(direction: int) -> ChainComplex:
    return ChainComplex({direction: ["σ"]}, {}, TruncationWindow(direction, direction, truncated=False),
                        "Σℤ" if direction > 0 else "Σ⁻¹ℤ", str)


def chain_suspend(K: Coalgebra, k: int) -> Coalgebra:
    """Sigma^k of the carrier, as a coalgebra over Sigma^k of the operad.

    One layer sends s_n (x) a to the image of (sigma -> sigma^n) (x) a(a)
    under the pairing CoEnd(Sigma Z) (x) CoEnd(C) -> CoEnd(Sigma C), with the
    key sigma (x) c identified with c.
    """
    if k == 0:
        return K
    direction = 1 if k > 0 else -1
    Z = _unit_sphere(direction)
    C = K.carrier
    op = iterated_suspension(K.operad, direction)
    op.name = _suspended_name(K.operad, direction)
    carrier = suspend(C, direction, f"Σ^{direction}{C.name}" if direction < 0 else f"Σ{C.name}")

    def structure(key):
        gen, a = key
        n = gen[1]
        sigma_map = ("σ", ("σ",) * n)
        out: LinComb = {}
        for (x, t), c in K.adjoint_value(a).items():
            s, _, word = coend_pair(Z, C, sigma_map, (x, t))
            add_to(out, (x, tuple(y for _, y in word)), s * c)
        return out

    base = Coalgebra(op, carrier, structure, f"Σ^{direction}{K.name}", K.max_rank)
    if isinstance(K, PointedCoalgebra):
        base = PointedCoalgebra(base, K.basepoint, K.augmentation, K.level - direction)
    return chain_suspend(base, k - direction)


def _suspended_name(O: Operad, direction: int) -> str:
    k, inner = suspension_layers(O)
    return f"Σ^{k + direction}{inner.name}" if k + direction else inner.name


# -- m-coalgebra suspension --------------------------------------------------

def suspend_m(K: PointedCoalgebra, interval: Optional[PointedCoalgebra] = None) -> PointedCoalgebra:
    """SC = (I (x) C) / ([0] (x) C+ + [1] (x) C+ + [0,1] (x) p), with [1] (x) p = [0] (x) p.

    Here C+ is realized as the kernel of the augmentation.  Basis: the
    basepoint [0] (x) p under the key p, and [0,1] (x) c for each other key c,
    under the key c with degree raised by one.  The structure is the quotient
    of  Delta, then u (x) a, then the pairing into CoEnd(I (x) C).
    """
    if K.level != 0:
        raise ValueError("suspend_m needs a level-0 m-coalgebra")
    if not isinstance(K.operad, BarOperad):
        raise TypeError("suspend_m needs a coalgebra over the bar operad")
    U = interval or make_interval(K.operad)
    if not same_operad(U.operad, K.operad):
        raise ValueError("interval and coalgebra live over different operads")
    from .operad import aw

    C, p, eps = K.carrier, K.basepoint, K.augmentation
    I = U.carrier
    IC = tensor_complex(I, C)

    def lift(z):
        return ("p0", p) if z == p else ("q", z)

    def proj_letter(pair) -> LinComb:
        i, y = pair
        if i == "q":
            return {} if y == p else {y: 1}
        e = eps.get(y, 0) if C.degree(y) == 0 else 0
        return {p: e} if e else {}

    def proj_word(word) -> LinComb:
        out: LinComb = {(): 1}
        for pair in word:
            img = proj_letter(pair)
            if not img:
                return {}
            (z, c), = img.items()
            out = {w + (z,): v * c for w, v in out.items()}
        return out

    basis: Dict[int, List[Key]] = {0: [p]}
    for d in C.degrees():
        for x in C.basis(d):
            if x != p:
                basis.setdefault(d + 1, []).append(x)
    diff: Dict[Key, LinComb] = {}
    for ds in basis.values():
        for z in ds:
            img: LinComb = {}
            for pair, c in IC.d(lift(z)).items():
                for w, e in proj_letter(pair).items():
                    add_to(img, w, c * e)
            diff[z] = img
    lo = min(basis)
    W = TruncationWindow(lo, C.window.max_degree + 1, truncated=C.window.truncated)
    SC = ChainComplex(basis, diff, W, f"S{C.name}", C.labeler)
    keys = list(SC.keys())

    def structure(a):
        out: LinComb = {}
        for (a1, a2), c in aw(a).items():
            u_map = U._by_source(a1)
            r_map = K._by_source(a2)
            for z in keys:
                xi, xc = lift(z)
                for ta, ca in u_map.get(xi, {}).items():
                    for tb, cb in r_map.get(xc, {}).items():
                        s, _, word = coend_pair(I, C, (xi, ta), (xc, tb))
                        for w, e in proj_word(word).items():
                            add_to(out, (z, w), c * ca * cb * s * e)
        return out

    base = Coalgebra(K.operad, SC, structure, f"S{K.name}", K.max_rank)
    return PointedCoalgebra(base, p, {p: 1})


# -- the suspension theorem --------------------------------------------------

def same_carrier(A: ChainComplex, B: ChainComplex) -> bool:
    """Equal labeled bases and differential matrices, and the same top degree.

    The bottom of the window is ignored: SC keeps its basepoint in degree 0
    while the chain suspension of C+ starts one degree up.
    """
    sa, sb = A.signature(), B.signature()
    return sa[1:] == sb[1:]

def check_suspension_theorem(K: PointedCoalgebra, max_rank: int = 2, max_degree: int = 3,
                             V: Optional[OperadMorphism] = None,
                             morphism: Optional[GradedMap] = None,
                             target: Optional[PointedCoalgebra] = None) -> Report:
    """Both squares relating the m-suspension to the chain suspension.

    Left square: the reduced structure of SC equals the chain suspension of
    the structure of C+ precomposed with V.  Right square: the chain
    suspension of a+ commutes with the suspension isomorphisms.  When a
    morphism f: SC -> D is given, the desuspended square through U is
    checked as well: Sigma^-1 f+ is a morphism U*(C+) -> Sigma^-1 D+.
    """
    from . import suspops

    rep = Report(f"suspension theorem for {K.name}")
    S = K.operad
    SK = suspend_m(K)
    SKp = reduce(SK)
    Kp = reduce(K)
    sigma_Kp = chain_suspend(Kp, 1)

    rep.tick("carrier")
    if not same_carrier(SKp.carrier, suspend(Kp.carrier, 1)):
        rep.fail("carrier", "(SC)+ differs from Σ(C+)")

    V = V or suspops.make_V(S)
    iso = suspops.make_suspension_iso(S, 1)
    co_iso = suspops.coend_suspension_iso(Kp.carrier, S.max_rank)
    R = min(max_rank, S.max_rank)
    for n in range(1, R + 1):
        for d in range(0, max_degree + 1):
            for a in S.basis(n, d):
                lhs = SKp.adjoint_value(a)
                rhs = apply_linear(sigma_Kp.adjoint_value, V(a))
                rep.expect("left square", lambda: f"a+_SC({S.label(a)})", lhs, rhs,
                           lambda lc: SKp.coend().lc_label(lc))
                lhs = apply_linear(sigma_Kp.adjoint_value, iso(a))
                rhs = co_iso.apply(Kp.adjoint_value(a))
                rep.expect("right square", lambda: f"Σa+(I({S.label(a)}))", lhs, rhs,
                           lambda lc: sigma_Kp.coend().lc_label(lc))

    if morphism is not None:
        D = target if target is not None else SK
        rep.merge(check_coalgebra_morphism(morphism, SK, D, R), "morphism ")
        U = suspops.make_U(S, V=V)
        Dp = reduce(D)
        down = chain_suspend(Dp, -1)
        cols = {}
        for x in Kp.carrier.keys():
            cols[x] = {y: c for y, c in morphism(x).items() if y != D.basepoint}
        f_down = GradedMap(Kp.carrier, down.carrier, 0, cols, "Σ⁻¹f⁺", check=False)
        rep.merge(check_coalgebra_morphism(f_down, pullback(U, Kp), down, R), "corollary square ")
    return rep


# -- JSON -------------------------------------------------------------------

def operad_ref(O: Operad) -> dict:
    k, inner = suspension_layers(O)
    if not isinstance(inner, BarOperad):
        raise TypeError(f"cannot serialize coalgebras over {O.name}")
    return {"kind": "bar", "max_rank": inner.max_rank, "max_degree": inner.max_degree,
            "level": -k}


def operad_from_ref(ref: Mapping) -> Operad:
    if ref.get("kind") != "bar":
        raise ValueError(f"unknown operad kind {ref.get('kind')!r}")
    S = BarOperad(int(ref["max_rank"]), int(ref["max_degree"]))
    k = -int(ref.get("level", 0))
    if k == 0:
        return S
    return iterated_suspension(S, k)


def coalgebra_to_json(K: Coalgebra) -> dict:
    C, O = K.carrier, K.operad
    entries = []
    for n in range(1, K.max_rank + 1):
        for a in O.all_basis(n):
            for x in C.keys():
                val = K.value(a, x)
                if not val:
                    continue
                terms = sorted([c, [C.label(y) for y in t]] for t, c in val.items())
                entries.append({"rank": n, "operad_basis_label": O.label(a),
                                "carrier_label": C.label(x), "value": terms})
    out = {"name": K.name, "operad": operad_ref(O), "max_rank": K.max_rank,
           "carrier": complex_to_json(C), "structure": entries}
    if isinstance(K, PointedCoalgebra):
        out["basepoint"] = C.label(K.basepoint)
        out["augmentation"] = {C.label(x): c for x, c in sorted(K.augmentation.items(),
                                                                 key=lambda kv: C.label(kv[0]))}
        out["level"] = K.level
    return out


def coalgebra_from_json(data: Mapping) -> Coalgebra:
    try:
        O = operad_from_ref(data["operad"])
        C = complex_from_json(data["carrier"])
        R = int(data.get("max_rank", O.max_rank))
        labels = {}
        for n in range(1, R + 1):
            for a in O.all_basis(n):
                labels[O.label(a)] = a
        table: Dict[Key, LinComb] = {}
        for e in data["structure"]:
            a = labels[e["operad_basis_label"]]
            x = str(e["carrier_label"])
            if x not in C:
                raise KeyError(x)
            for c, word in e["value"]:
                add_to(table.setdefault(a, {}), (x, tuple(str(y) for y in word)), int(c))
        name = str(data.get("name", C.name))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed coalgebra JSON: {exc}") from exc
    K = Coalgebra(O, C, lambda a: table.get(a, {}), name, R)
    if "basepoint" in data:
        K = PointedCoalgebra(K, str(data["basepoint"]),
                             {str(k): int(v) for k, v in data.get("augmentation", {}).items()},
                             int(data.get("level", 0)))
    return K
