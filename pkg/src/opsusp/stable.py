"""Finite levels of the desuspension tower and zigzag certificates.

A level-k object is a coalgebra over Sigma^-k S.  Arrows between objects of
different levels are checked after pulling the lower end up along U; the
left-pointing arrows must in addition be homology isomorphisms on the
claimed range.  Nothing here searches for zigzags: certificates are
supplied and verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .chaincore import (ChainComplex, GradedMap, TruncationWindow, WindowError, identity_map,
                        quasi_iso_witness, suspend)
from .coalg import (Coalgebra, check_coalgebra, check_coalgebra_morphism, coalgebra_from_json,
                    coalgebra_to_json, extend_acyclic, pullback, same_operad)
from .lincomb import Key, LinComb, add_to
from .operad import (BarOperad, Operad, OperadMorphism, Report, iterated_suspension, strip_key,
                     suspension_layers)
from .suspops import U_power, VMorphism, make_V


# -- the finite levels ------------------------------------------------------

class FiniteLevelOperad(Operad):
    """F^n: sequences (a_0, ..., a_n) with a_i = U(a_(i+1)), keyed by a_n."""

    def __init__(self, n: int, S: BarOperad, V: Optional[VMorphism] = None):
        if n < 0:
            raise ValueError("level must be nonnegative")
        self.n = n
        self.S = S
        self.V = V or make_V(S)
        self.top = iterated_suspension(S, -n)
        self.name = f"F^{n}"
        self.max_rank = S.max_rank
        self.truncated = self.top.truncated
        self._steps = [U_power(S, 1, i, self.V) for i in range(n)]

    def degree_range(self, r):
        return self.top.degree_range(r)

    def basis(self, r, d):
        return self.top.basis(r, d)

    def rank(self, key):
        return self.top.rank(key)

    def degree(self, key):
        return self.top.degree(key)

    def d(self, key):
        return self.top.d(key)

    def act(self, sigma, key):
        return self.top.act(sigma, key)

    def _circ(self, a, i, b):
        return self.top._circ(a, i, b)

    def unit_element(self):
        return self.top.unit_element()

    def label(self, key):
        return self.top.label(key)

    def coordinates(self, key) -> List[LinComb]:
        """[a_0, ..., a_n], each coordinate pushed down one level by U."""
        out = [{key: 1}]
        for i in range(self.n - 1, -1, -1):
            out.append(self._steps[i].apply(out[-1]))
        return out[::-1]

    def projection(self, i: int) -> OperadMorphism:
        """p_i: F^n -> Sigma^-i S, through the chain of single steps."""
        if not 0 <= i <= self.n:
            raise ValueError(f"no projection p_{i} at level {self.n}")
        return OperadMorphism(self, iterated_suspension(self.S, -i),
                              lambda k: self.coordinates(k)[i], f"𝔭_{i}")

    def stripped_component(self, r: int) -> ChainComplex:
        """The rank-r component with every suspension generator removed."""
        C = self.component(r)
        return C.relabel(lambda k: strip_key(k, self.n), f"F^{self.n}({r})", self.S.label)

    def expected_component(self, r: int) -> ChainComplex:
        return suspend(self.S.component(r), -self.n * (r - 1))


def finite_level(n: int, S: Optional[BarOperad] = None,
                 V: Optional[VMorphism] = None) -> FiniteLevelOperad:
    return FiniteLevelOperad(n, S or BarOperad(3, 3), V)


def check_finite_level(F: FiniteLevelOperad) -> Report:
    """Components match the shifted bar complexes; p_k followed by U^k is p_0."""
    rep = Report(f"finite level {F.n}")
    for r in range(1, F.max_rank + 1):
        rep.tick("component")
        if F.stripped_component(r) != F.expected_component(r):
            rep.fail("component", f"rank {r}")
    p0 = F.projection(0)
    for k in range(0, F.n + 1):
        pk = F.projection(k)
        Uk = U_power(F.S, k, 0, F.V)
        for r in range(1, F.max_rank + 1):
            for x in F.all_basis(r):
                rep.expect("p_k U^k = p_0", lambda: f"k={k}, {F.label(x)}",
                           Uk.apply(pk(x)), p0(x), F.S.lc_label)
    return rep


# -- levelled objects and zigzags -------------------------------------------

@dataclass
class LevelledObject:
    coalgebra: Coalgebra
    level: int

    def __post_init__(self):
        k, inner = suspension_layers(self.coalgebra.operad)
        if not isinstance(inner, BarOperad) or k != -self.level:
            raise ValueError(f"{self.coalgebra.name} lives over {self.coalgebra.operad.name}, "
                             f"not level {self.level}")

    @property
    def bar(self) -> BarOperad:
        return suspension_layers(self.coalgebra.operad)[1]


@dataclass
class Arrow:
    """A coalgebra morphism between neighbouring objects.

    ``source``/``target`` are object positions differing by one; a left
    arrow points from position i+1 to position i.
    """
    source: int
    target: int
    map: GradedMap
    qiso_range: Optional[Tuple[int, int]] = None

    @property
    def direction(self) -> str:
        return "right" if self.target == self.source + 1 else "left"


@dataclass
class Zigzag:
    objects: List[LevelledObject]
    arrows: List[Arrow] = field(default_factory=list)

    def __post_init__(self):
        if not self.objects:
            raise ValueError("a zigzag needs at least one object")
        if len(self.arrows) != len(self.objects) - 1:
            raise ValueError("need exactly one arrow between neighbouring objects")
        for i, a in enumerate(self.arrows):
            if {a.source, a.target} != {i, i + 1}:
                raise ValueError(f"arrow {i} must join objects {i} and {i + 1}")


def level_of(z: Zigzag) -> int:
    return max(o.level for o in z.objects)


class _Lifts:
    """Pullbacks along powers of U, shared across one verification."""

    def __init__(self, S: BarOperad):
        self.S = S
        self.V = make_V(S)
        self._cache: Dict[Tuple[int, int], OperadMorphism] = {}

    def lift(self, obj: LevelledObject, k: int) -> Coalgebra:
        if obj.level == k:
            return obj.coalgebra
        if obj.level > k:
            raise ValueError("cannot lower the level of an object")
        key = (k - obj.level, obj.level)
        if key not in self._cache:
            self._cache[key] = U_power(self.S, k - obj.level, obj.level, self.V)
        return pullback(self._cache[key], obj.coalgebra)


def _common_bar(z: Zigzag) -> BarOperad:
    bars = [o.bar for o in z.objects]
    S = bars[0]
    for B in bars[1:]:
        if not same_operad(B, S) or B.max_degree != S.max_degree:
            raise ValueError("objects live over different bar operad windows")
    return S


@dataclass
class ZigzagReport(Report):
    level: int = 0
    equivalence: bool = False


def verify_zigzag(z: Zigzag, lo: int, hi: int, check_objects: bool = True) -> ZigzagReport:
    """Arrows are coalgebra morphisms at the level of their ends; left arrows are
    homology isomorphisms on [lo, hi] (or their own claimed range)."""
    rep = ZigzagReport(f"zigzag of level {level_of(z)}")
    rep.level = level_of(z)
    S = _common_bar(z)
    lifts = _Lifts(S)
    if check_objects:
        for i, o in enumerate(z.objects):
            rep.merge(check_coalgebra(o.coalgebra), f"object {i} ")
    all_qiso = True
    for i, a in enumerate(z.arrows):
        src, tgt = z.objects[a.source], z.objects[a.target]
        k = max(src.level, tgt.level)
        K, L = lifts.lift(src, k), lifts.lift(tgt, k)
        rep.tick("carriers")
        if a.map.source != K.carrier or a.map.target != L.carrier:
            rep.fail("carriers", f"arrow {i}: map does not join the carriers of its ends")
            all_qiso = False
            continue
        rep.merge(check_coalgebra_morphism(a.map, K, L), f"arrow {i} ")
        r_lo, r_hi = a.qiso_range or (lo, hi)
        r_lo, r_hi = max(r_lo, lo), min(r_hi, hi)
        try:
            w = quasi_iso_witness(a.map, r_lo, r_hi)
        except WindowError as exc:
            rep.fail("range", f"arrow {i}: {exc}")
            all_qiso = False
            continue
        if w is not None:
            all_qiso = False
            if a.direction == "left":
                rep.fail("quasi-iso", f"arrow {i} ({a.map.name}): homology differs in degree {w}")
        if a.direction == "left":
            rep.tick("quasi-iso")
    rep.equivalence = rep.ok and all_qiso
    return rep


def align_zigzag(z: Zigzag, lo: Optional[int] = None, hi: Optional[int] = None) -> Zigzag:
    """Pull every object up to the top level; the arrows are kept as they are."""
    if lo is not None and hi is not None:
        rep = verify_zigzag(z, lo, hi, check_objects=False)
        if not rep.ok:
            raise ValueError(f"cannot align an unverified zigzag: {rep.first()}")
    k = level_of(z)
    lifts = _Lifts(_common_bar(z))
    objects = [LevelledObject(lifts.lift(o, k), k) for o in z.objects]
    return Zigzag(objects, list(z.arrows))


# -- certificate builders ---------------------------------------------------

def identity_zigzag(K: Coalgebra, level: int = 0) -> Zigzag:
    obj = LevelledObject(K, level)
    return Zigzag([obj, obj], [Arrow(0, 1, identity_map(K.carrier))])


def acyclic_pair(bottom: int = 0) -> ChainComplex:
    return ChainComplex({bottom: ["cone_b"], bottom + 1: ["cone_a"]}, {"cone_a": {"cone_b": 1}},
                        TruncationWindow(bottom, bottom + 1, truncated=False), "A", str)


def cone_zigzag(K: Coalgebra, level: int = 0, kind: str = "injection",
                bottom: Optional[int] = None) -> Zigzag:
    """K -> K (+) A <- K through the inclusion, or K <- K (+) A -> K through the retraction.

    A is the acyclic complex Z<a> -> Z<b>; the inclusion has acyclic cokernel.
    """
    C = K.carrier
    lo = C.window.min_degree if bottom is None else bottom
    Z = extend_acyclic(K, acyclic_pair(lo))
    inc = GradedMap(C, Z.carrier, 0, {x: {x: 1} for x in C.keys()}, "ι", check=False)
    ret = GradedMap(Z.carrier, C, 0, {x: {x: 1} for x in C.keys()}, "π", check=False)
    a, b = LevelledObject(K, level), LevelledObject(Z, level)
    if kind == "injection":
        arrows = [Arrow(0, 1, inc), Arrow(2, 1, inc)]
    elif kind == "retraction":
        arrows = [Arrow(1, 0, ret), Arrow(1, 2, ret)]
    else:
        raise ValueError("kind must be injection or retraction")
    return Zigzag([a, b, LevelledObject(K, level)], arrows)


def corrupt_zero(z: Zigzag, index: Optional[int] = None) -> Zigzag:
    """Replace an arrow (by default the first left one) by the zero map."""
    if index is None:
        index = next(i for i, a in enumerate(z.arrows) if a.direction == "left")
    arrows = list(z.arrows)
    a = arrows[index]
    zero = GradedMap(a.map.source, a.map.target, 0, {}, "0", check=False)
    arrows[index] = Arrow(a.source, a.target, zero, a.qiso_range)
    return Zigzag(list(z.objects), arrows)


# -- JSON -------------------------------------------------------------------

def map_to_json(f: GradedMap) -> list:
    S, T = f.source, f.target
    out = []
    for x in S.keys():
        for y, c in sorted(f(x).items(), key=lambda kv: T.label(kv[0])):
            out.append([S.label(x), T.label(y), c])
    return out


def zigzag_to_json(z: Zigzag) -> dict:
    objs = [{"level": o.level, "coalgebra": coalgebra_to_json(o.coalgebra)} for o in z.objects]
    arrows = []
    for a in z.arrows:
        e = {"from": a.source, "to": a.target, "direction": a.direction, "name": a.map.name,
             "map": map_to_json(a.map)}
        if a.qiso_range is not None:
            e["qiso_range"] = list(a.qiso_range)
        arrows.append(e)
    return {"objects": objs, "arrows": arrows}


def zigzag_from_json(data: Mapping) -> Zigzag:
    try:
        objects = [LevelledObject(coalgebra_from_json(o["coalgebra"]), int(o["level"]))
                   for o in data["objects"]]
        arrows = []
        for e in data.get("arrows", []):
            i, j = int(e["from"]), int(e["to"])
            S, T = objects[i].coalgebra.carrier, objects[j].coalgebra.carrier
            cols: Dict[Key, LinComb] = {}
            for x, y, c in e["map"]:
                if str(x) not in S or str(y) not in T:
                    raise KeyError(f"{x} -> {y}")
                add_to(cols.setdefault(str(x), {}), str(y), int(c))
            f = GradedMap(S, T, 0, cols, str(e.get("name", "f")), check=False)
            rng = e.get("qiso_range")
            a = Arrow(i, j, f, (int(rng[0]), int(rng[1])) if rng else None)
            if "direction" in e and e["direction"] != a.direction:
                raise ValueError(f"arrow {i}->{j} is not {e['direction']}")
            arrows.append(a)
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed zigzag JSON: {exc}") from exc
    return Zigzag(objects, arrows)
