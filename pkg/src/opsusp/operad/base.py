"""Operads given by basis-level evaluators, morphisms, and the law checker.

Composition convention: ``circ(a, i, b)`` inserts ``a`` into input slot
``i`` of ``b`` (``1 <= i <= rank b``), giving rank ``rank a + rank b - 1``.
The symmetric group acts on the left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..chaincore import ChainComplex, TruncationWindow
from ..lincomb import Key, LinComb, add_into, add_to, apply_linear, bilinear, scale
from ..symgrp import Perm, all_perms, block_sum, compose, identity, slot_shape, tmap


class TruncationError(ValueError):
    """A composition result falls outside the stored window."""


class Operad:
    """Abstract operad.  Subclasses supply the basis-level data."""

    name: str = "operad"
    max_rank: int = 1

    # -- to implement
    def degree_range(self, n: int) -> Tuple[int, int]:
        raise NotImplementedError

    def basis(self, n: int, d: int) -> Sequence[Key]:
        raise NotImplementedError

    def rank(self, key: Key) -> int:
        raise NotImplementedError

    def degree(self, key: Key) -> int:
        raise NotImplementedError

    def d(self, key: Key) -> LinComb:
        raise NotImplementedError

    def act(self, sigma: Perm, key: Key) -> LinComb:
        raise NotImplementedError

    def _circ(self, a: Key, i: int, b: Key) -> LinComb:
        raise NotImplementedError

    def unit_element(self) -> LinComb:
        raise NotImplementedError

    def label(self, key: Key) -> str:
        return str(key)

    # -- derived structure
    def in_window(self, n: int, d: int) -> bool:
        if not 1 <= n <= self.max_rank:
            return False
        lo, hi = self.degree_range(n)
        return lo <= d <= hi

    def circ(self, a: Key, i: int, b: Key) -> LinComb:
        n, m = self.rank(a), self.rank(b)
        if not 1 <= i <= m:
            raise IndexError(f"slot {i} out of range for rank {m}")
        r = n + m - 1
        if r > self.max_rank:
            raise TruncationError(f"rank {r} exceeds max rank {self.max_rank}")
        if self.in_window(r, self.degree(a) + self.degree(b)):
            return self._circ(a, i, b)
        # Outside the degree range the result is zero in a finite operad but
        # unknown in a truncated one.
        if self.truncated or self._circ(a, i, b):
            raise TruncationError(f"degree {self.degree(a) + self.degree(b)} outside rank-{r} window")
        return {}

    def compose(self, A: Mapping[Key, int], i: int, B: Mapping[Key, int]) -> LinComb:
        return bilinear(lambda a, b: self.circ(a, i, b), A, B)

    def act_lc(self, sigma: Perm, A: Mapping[Key, int]) -> LinComb:
        return apply_linear(lambda k: self.act(sigma, k), A)

    def d_lc(self, A: Mapping[Key, int]) -> LinComb:
        return apply_linear(self.d, A)

    def gamma(self, us: Sequence[Mapping[Key, int]], u: Mapping[Key, int]) -> LinComb:
        """u_1 o_1 (u_2 o_2 ( ... (u_k o_k u))), right-associated."""
        out = dict(u)
        for i in range(len(us), 0, -1):
            out = self.compose(us[i - 1], i, out)
        return out

    def degrees(self, n: int) -> range:
        lo, hi = self.degree_range(n)
        return range(lo, hi + 1)

    def all_basis(self, n: int) -> List[Key]:
        return [k for d in self.degrees(n) for k in self.basis(n, d)]

    def window(self) -> TruncationWindow:
        los, his = zip(*(self.degree_range(n) for n in range(1, self.max_rank + 1)))
        return TruncationWindow(min(los), max(his), self.max_rank, self.truncated)

    truncated: bool = False

    def component(self, n: int) -> ChainComplex:
        cache = self.__dict__.setdefault("_components", {})
        if n not in cache:
            lo, hi = self.degree_range(n)
            basis = {d: list(self.basis(n, d)) for d in range(lo, hi + 1)}
            diff = {k: self.d(k) for ks in basis.values() for k in ks}
            cache[n] = ChainComplex(basis, diff, TruncationWindow(lo, hi, None, self.truncated),
                                    f"{self.name}({n})", self.label)
        return cache[n]

    def lc_label(self, A: Mapping[Key, int]) -> str:
        if not A:
            return "0"
        parts = []
        for k, c in sorted(A.items(), key=lambda kc: self.label(kc[0])):
            parts.append(f"{c:+d}·{self.label(k)}" if c not in (1, -1)
                         else f"{'+' if c > 0 else '-'}{self.label(k)}")
        return " ".join(parts)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} max_rank={self.max_rank}>"


# -- morphisms -------------------------------------------------------------

class OperadMorphism:
    """A degree-0 map of operads given on source basis keys."""

    def __init__(self, source: Operad, target: Operad, fn: Callable[[Key], Mapping[Key, int]],
                 name: str = "f", cache: bool = True):
        self.source = source
        self.target = target
        self.name = name
        self._fn = fn
        self._cache: Optional[Dict[Key, LinComb]] = {} if cache else None

    def __call__(self, key: Key) -> LinComb:
        if self._cache is None:
            return dict(self._fn(key))
        v = self._cache.get(key)
        if v is None:
            v = {k: c for k, c in self._fn(key).items() if c}
            self._cache[key] = v
        return v

    def apply(self, A: Mapping[Key, int]) -> LinComb:
        return apply_linear(self, A)

    def then(self, other: "OperadMorphism", name: str = "") -> "OperadMorphism":
        """``other`` after ``self``."""
        return OperadMorphism(self.source, other.target, lambda k: other.apply(self(k)),
                              name or f"{other.name}∘{self.name}")


def identity_morphism(O: Operad) -> OperadMorphism:
    return OperadMorphism(O, O, lambda k: {k: 1}, "id")


# -- reports ---------------------------------------------------------------

@dataclass
class Violation:
    law: str
    instance: str
    lhs: str = ""
    rhs: str = ""

    def __str__(self):
        out = f"{self.law}: {self.instance}"
        if self.lhs or self.rhs:
            out += f"  [{self.lhs}  vs  {self.rhs}]"
        return out


@dataclass
class Report:
    subject: str
    checked: Dict[str, int] = field(default_factory=dict)
    skipped: Dict[str, int] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    limit: int = 50

    @property
    def ok(self) -> bool:
        return not self.violations and not self.__dict__.get("_overflow", 0)

    def tick(self, law: str, n: int = 1) -> None:
        self.checked[law] = self.checked.get(law, 0) + n

    def skip(self, law: str, n: int = 1) -> None:
        self.skipped[law] = self.skipped.get(law, 0) + n

    def fail(self, law: str, instance: str, lhs: str = "", rhs: str = "") -> None:
        if len(self.violations) < self.limit:
            self.violations.append(Violation(law, instance, lhs, rhs))
        else:
            self.__dict__["_overflow"] = self.__dict__.get("_overflow", 0) + 1

    def expect(self, law: str, instance: Callable[[], str], lhs: LinComb, rhs: LinComb,
               fmt: Callable[[LinComb], str] = str) -> bool:
        self.tick(law)
        if lhs != rhs:
            self.fail(law, instance(), fmt(lhs), fmt(rhs))
            return False
        return True

    def first(self, law: Optional[str] = None) -> Optional[Violation]:
        for v in self.violations:
            if law is None or v.law == law:
                return v
        return None

    def failed_laws(self) -> List[str]:
        return sorted({v.law for v in self.violations})

    def merge(self, other: "Report", prefix: str = "") -> None:
        for k, v in other.checked.items():
            self.tick(prefix + k, v)
        for k, v in other.skipped.items():
            self.skip(prefix + k, v)
        for v in other.violations:
            self.fail(prefix + v.law, v.instance, v.lhs, v.rhs)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        total = sum(self.checked.values())
        out = f"{status} {self.subject}: {total} instances"
        if self.skipped:
            out += f", {sum(self.skipped.values())} skipped (outside window)"
        if self.violations:
            out += f"; first violation -> {self.violations[0]}"
        return out

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok,
                "checked": dict(sorted(self.checked.items())),
                "skipped": dict(sorted(self.skipped.items())),
                "violations": [v.__dict__ for v in self.violations]}


class _RenamingReport(Report):
    names: Dict[str, str] = {}

    def tick(self, law, n=1):
        super().tick(self.names.get(law, law), n)

    def skip(self, law, n=1):
        super().skip(self.names.get(law, law), n)

    def fail(self, law, instance, lhs="", rhs=""):
        super().fail(self.names.get(law, law), instance, lhs, rhs)


# -- law checking ----------------------------------------------------------

def _try(fn: Callable[[], LinComb]) -> Optional[LinComb]:
    try:
        return fn()
    except TruncationError:
        return None


def _ranks(O: Operad, max_rank: Optional[int]) -> range:
    R = O.max_rank if max_rank is None else min(max_rank, O.max_rank)
    return range(1, R + 1)


def check_axioms(O: Operad, max_rank: Optional[int] = None,
                 laws: Optional[Sequence[str]] = None) -> Report:
    """Exhaustively check the operad laws on every basis instance in the window.

    Laws: ``d2``, ``action`` (left action, identity acts trivially),
    ``action-d`` (action commutes with d), ``unit``, ``leibniz``,
    ``associativity``, ``commutativity`` (disjoint slots, sign
    (-1)^(|a||b|)), ``equivariance`` (permuting the outer element, with the
    T-map at slot sigma(i)) and ``block-equivariance`` (permuting the inner
    element, with a block sum).
    """
    wanted = set(laws) if laws else None
    rep = Report(O.name)
    ranks = _ranks(O, max_rank)
    R = ranks[-1]
    basis = {n: O.all_basis(n) for n in ranks}
    fmt = O.lc_label

    def on(law):
        return wanted is None or law in wanted

    if on("d2"):
        for n in ranks:
            for x in basis[n]:
                rep.expect("d2", lambda: f"d d {O.label(x)}", O.d_lc(O.d(x)), {}, fmt)

    if on("action") or on("action-d"):
        for n in ranks:
            G = all_perms(n)
            e = identity(n)
            for x in basis[n]:
                if on("action"):
                    rep.expect("action", lambda: f"e·{O.label(x)}", O.act(e, x), {x: 1}, fmt)
                    for s in G:
                        sx = O.act(s, x)
                        for t in G:
                            rep.expect("action", lambda: f"{s}·({t}·{O.label(x)})",
                                       O.act_lc(s, O.act(t, x)), O.act(compose(s, t), x), fmt)
                        if on("action-d"):
                            rep.expect("action-d", lambda: f"d({s}·{O.label(x)})",
                                       O.d_lc(sx), O.act_lc(s, O.d(x)), fmt)
                elif on("action-d"):
                    for s in G:
                        rep.expect("action-d", lambda: f"d({s}·{O.label(x)})",
                                   O.d_lc(O.act(s, x)), O.act_lc(s, O.d(x)), fmt)

    unit = O.unit_element()
    if on("unit"):
        for n in ranks:
            for b in basis[n]:
                for i in range(1, n + 1):
                    got = _try(lambda: O.compose(unit, i, {b: 1}))
                    if got is None:
                        rep.skip("unit")
                        continue
                    rep.expect("unit", lambda: f"e ∘_{i} {O.label(b)}", got, {b: 1}, fmt)
                got = _try(lambda: O.compose({b: 1}, 1, unit))
                if got is None:
                    rep.skip("unit")
                else:
                    rep.expect("unit", lambda: f"{O.label(b)} ∘_1 e", got, {b: 1}, fmt)

    pairs = [(n, m) for n in ranks for m in ranks if n + m - 1 <= R]

    if on("leibniz"):
        for n, m in pairs:
            for a in basis[n]:
                sa = -1 if O.degree(a) % 2 else 1
                for b in basis[m]:
                    for i in range(1, m + 1):
                        ab = _try(lambda: O.circ(a, i, b))
                        if ab is None:
                            rep.skip("leibniz")
                            continue
                        lhs = O.d_lc(ab)
                        rhs = O.compose(O.d(a), i, {b: 1})
                        add_into(rhs, O.compose({a: 1}, i, O.d(b)), sa)
                        rep.expect("leibniz", lambda: f"d({O.label(a)} ∘_{i} {O.label(b)})",
                                   lhs, rhs, fmt)

    if on("block-equivariance"):
        for n, m in pairs:
            Gn = all_perms(n)
            for a in basis[n]:
                for b in basis[m]:
                    for i in range(1, m + 1):
                        ab = _try(lambda: O.circ(a, i, b))
                        if ab is None:
                            rep.skip("block-equivariance")
                            continue
                        for t in Gn:
                            blk = block_sum([identity(i - 1), t, identity(m - i)])
                            lhs = O.compose(O.act(t, a), i, {b: 1})
                            rep.expect("block-equivariance",
                                       lambda: f"({t}·{O.label(a)}) ∘_{i} {O.label(b)}",
                                       lhs, O.act_lc(blk, ab), fmt)

    if on("equivariance"):
        for n, m in pairs:
            Gm = all_perms(m)
            for a in basis[n]:
                for b in basis[m]:
                    for i in range(1, m + 1):
                        ab = _try(lambda: O.circ(a, i, b))
                        if ab is None:
                            rep.skip("equivariance")
                            continue
                        for s in Gm:
                            T = tmap(slot_shape(m, s[i - 1], n), s)
                            lhs = O.compose({a: 1}, s[i - 1], O.act(s, b))
                            rep.expect("equivariance",
                                       lambda: f"{O.label(a)} ∘_{s[i - 1]} ({s}·{O.label(b)}), i={i}",
                                       lhs, O.act_lc(T, ab), fmt)

    triples = [(n, m, t) for n in ranks for m in ranks for t in ranks if n + m + t - 2 <= R]

    if on("associativity"):
        for n, m, t in triples:
            for a in basis[n]:
                for b in basis[m]:
                    for c in basis[t]:
                        for i in range(1, m + 1):
                            ab = _try(lambda: O.circ(a, i, b))
                            for j in range(1, t + 1):
                                bc = _try(lambda: O.circ(b, j, c))
                                if ab is None or bc is None:
                                    rep.skip("associativity")
                                    continue
                                lhs = _try(lambda: O.compose(ab, j, {c: 1}))
                                rhs = _try(lambda: O.compose({a: 1}, i + j - 1, bc))
                                if lhs is None or rhs is None:
                                    rep.skip("associativity")
                                    continue
                                rep.expect("associativity",
                                           lambda: f"({O.label(a)} ∘_{i} {O.label(b)}) ∘_{j} {O.label(c)}"
                                                   f"  (n,m,i,j)=({n},{m},{i},{j})",
                                           lhs, rhs, fmt)

    if on("commutativity"):
        for n, m, t in triples:
            for a in basis[n]:
                for b in basis[m]:
                    s = -1 if (O.degree(a) * O.degree(b)) % 2 else 1
                    for c in basis[t]:
                        for i in range(2, t + 1):
                            for j in range(1, i):
                                bc = _try(lambda: O.circ(b, j, c))
                                ac = _try(lambda: O.circ(a, i, c))
                                if bc is None or ac is None:
                                    rep.skip("commutativity")
                                    continue
                                lhs = _try(lambda: O.compose({a: 1}, i + m - 1, bc))
                                rhs = _try(lambda: O.compose({b: 1}, j, ac))
                                if lhs is None or rhs is None:
                                    rep.skip("commutativity")
                                    continue
                                rep.expect("commutativity",
                                           lambda: f"{O.label(a)} ∘_{i + m - 1} ({O.label(b)} ∘_{j} {O.label(c)})",
                                           lhs, scale(rhs, s), fmt)
    return rep


def check_morphism(f: OperadMorphism, max_rank: Optional[int] = None,
                   names: Optional[Mapping[str, str]] = None, subject: str = "") -> Report:
    """Chain map, equivariance, unit and composition compatibility on the window.

    ``names`` renames laws in the report, e.g. composition -> coherence when
    the target is a coendomorphism operad.
    """
    S, T = f.source, f.target
    rep = _RenamingReport(subject or f"{f.name}: {S.name} -> {T.name}")
    rep.names = dict(names or {})
    R = min(S.max_rank, T.max_rank) if max_rank is None else min(max_rank, S.max_rank, T.max_rank)
    ranks = range(1, R + 1)
    basis = {n: S.all_basis(n) for n in ranks}
    fmt = T.lc_label
    rep.expect("unit", lambda: "f(e)", f.apply(S.unit_element()), T.unit_element(), fmt)
    for n in ranks:
        for x in basis[n]:
            rep.expect("chain-map", lambda: f"f(d {S.label(x)})", f.apply(S.d(x)),
                       T.d_lc(f(x)), fmt)
            for s in all_perms(n):
                rep.expect("equivariance", lambda: f"f({s}·{S.label(x)})",
                           f.apply(S.act(s, x)), T.act_lc(s, f(x)), fmt)
    for n in ranks:
        for m in ranks:
            if n + m - 1 > R:
                continue
            for a in basis[n]:
                for b in basis[m]:
                    for i in range(1, m + 1):
                        ab = _try(lambda: S.circ(a, i, b))
                        if ab is None:
                            rep.skip("composition")
                            continue
                        rhs = _try(lambda: T.compose(f(a), i, f(b)))
                        if rhs is None:
                            rep.skip("composition")
                            continue
                        rep.expect("composition",
                                   lambda: f"f({S.label(a)} ∘_{i} {S.label(b)})",
                                   f.apply(ab), rhs, fmt)
    return rep


# -- mutation helpers (used by the test-suite and acceptance runner) -------

class MutatedOperad(Operad):
    """Wraps an operad and negates a single basis-level composition."""

    def __init__(self, base: Operad, a: Key, i: int, b: Key):
        self.base = base
        self.target_entry = (a, i, b)
        self.name = f"{base.name}[flip {base.label(a)}∘_{i}{base.label(b)}]"
        self.max_rank = base.max_rank
        self.truncated = base.truncated

    def degree_range(self, n):
        return self.base.degree_range(n)

    def basis(self, n, d):
        return self.base.basis(n, d)

    def rank(self, key):
        return self.base.rank(key)

    def degree(self, key):
        return self.base.degree(key)

    def d(self, key):
        return self.base.d(key)

    def act(self, sigma, key):
        return self.base.act(sigma, key)

    def _circ(self, a, i, b):
        out = self.base._circ(a, i, b)
        if (a, i, b) == self.target_entry:
            return scale(out, -1)
        return out

    def unit_element(self):
        return self.base.unit_element()

    def label(self, key):
        return self.base.label(key)


class SubOperad(Operad):
    """The span of the basis keys accepted by ``keep``.

    Closure under d, the action and composition is the caller's claim;
    ``check_axioms`` on the result detects a failure as terms leaving the
    span only indirectly, so ``closure_failures`` checks it directly.
    """

    def __init__(self, base: Operad, keep: Callable[[Key], bool], name: str = ""):
        self.base = base
        self.keep = keep
        self.name = name or f"{base.name}'"
        self.max_rank = base.max_rank
        self.truncated = base.truncated

    def degree_range(self, n):
        return self.base.degree_range(n)

    def basis(self, n, d):
        return [k for k in self.base.basis(n, d) if self.keep(k)]

    def rank(self, key):
        return self.base.rank(key)

    def degree(self, key):
        return self.base.degree(key)

    def d(self, key):
        return self.base.d(key)

    def act(self, sigma, key):
        return self.base.act(sigma, key)

    def _circ(self, a, i, b):
        return self.base._circ(a, i, b)

    def unit_element(self):
        return self.base.unit_element()

    def label(self, key):
        return self.base.label(key)

    def closure_failures(self, max_rank: Optional[int] = None) -> List[str]:
        bad = []
        ranks = _ranks(self, max_rank)
        for n in ranks:
            for x in self.all_basis(n):
                if not all(self.keep(k) for k in self.d(x)):
                    bad.append(f"d {self.label(x)}")
        for n in ranks:
            for m in ranks:
                if n + m - 1 > ranks[-1]:
                    continue
                for a in self.all_basis(n):
                    for b in self.all_basis(m):
                        for i in range(1, m + 1):
                            ab = _try(lambda: self.circ(a, i, b)) or {}
                            if not all(self.keep(k) for k in ab):
                                bad.append(f"{self.label(a)} ∘_{i} {self.label(b)}")
        return bad
