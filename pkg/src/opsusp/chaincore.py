"""Graded free abelian chain complexes over the integers.

Complexes are stored by basis keys.  Keys are arbitrary hashables, unique
across degrees, and each complex carries a labeler that renders them as
strings for serialization.  All arithmetic is exact.

Sign conventions used throughout:

* tensor differential ``d(a x b) = da x b + (-1)^|a| a x db``;
* ``(f x g)(a x b) = (-1)^(|g||a|) f(a) x g(b)``;
* ``boundary_of_map(f) = d f - (-1)^|f| f d``;
* ``suspend(C, k)`` keeps keys, adds ``k`` to degrees and multiplies the
  differential by ``(-1)^k`` (the one-step rule applied ``k`` times).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import (Callable, Dict, Hashable, Iterable, List, Mapping, Optional,
                    Sequence, Tuple)

from .lincomb import Key, LinComb, add_into, add_to, apply_linear
from .snf import integer_kernel, invariant_factors


class WindowError(ValueError):
    """A request falls outside the degrees on which an object is known."""


@dataclass(frozen=True)
class TruncationWindow:
    """Degrees ``min_degree..max_degree`` on which a complex is stored.

    Everything below ``min_degree`` is zero.  When ``truncated`` is set the
    complex may continue above ``max_degree``; otherwise it genuinely ends.
    ``max_rank`` only matters for operads.
    """

    min_degree: int
    max_degree: int
    max_rank: Optional[int] = None
    truncated: bool = True

    def __post_init__(self):
        if self.min_degree > self.max_degree:
            raise WindowError(f"empty window [{self.min_degree}, {self.max_degree}]")
        if self.max_rank is not None and self.max_rank < 1:
            raise WindowError("max_rank must be positive")

    def contains(self, d: int) -> bool:
        return self.min_degree <= d <= self.max_degree

    def shift(self, k: int) -> "TruncationWindow":
        return TruncationWindow(self.min_degree + k, self.max_degree + k,
                                self.max_rank, self.truncated)

    def homology_top(self) -> int:
        """Largest degree whose homology is determined by the stored data."""
        return self.max_degree - 1 if self.truncated else self.max_degree

    def to_json(self) -> dict:
        out = {"min": self.min_degree, "max": self.max_degree, "truncated": self.truncated}
        if self.max_rank is not None:
            out["max_rank"] = self.max_rank
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncationWindow":
        return cls(int(data["min"]), int(data["max"]), data.get("max_rank"),
                   bool(data.get("truncated", True)))


def default_label(key: Hashable) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return "(" + ",".join(default_label(k) for k in key) + ")"
    return str(key)


def _wrap(label: str) -> str:
    return f"({label})" if "⊗" in label else label


def tensor_label(*labels: str) -> str:
    return "⊗".join(_wrap(l) for l in labels)


class ChainComplex:
    """A windowed chain complex with a basis per degree and a sparse differential."""

    def __init__(self, basis: Mapping[int, Sequence[Key]],
                 differential: Mapping[Key, Mapping[Key, int]],
                 window: TruncationWindow, name: str = "",
                 labeler: Optional[Callable[[Key], str]] = None):
        self.name = name
        self.window = window
        self._labeler = labeler or default_label
        self._basis: Dict[int, Tuple[Key, ...]] = {}
        self._degree: Dict[Key, int] = {}
        for d in sorted(basis):
            keys = tuple(basis[d])
            if not keys:
                continue
            if not window.contains(d):
                raise WindowError(f"{name}: basis in degree {d} outside window")
            for k in keys:
                if k in self._degree:
                    raise ValueError(f"{name}: duplicate basis key {k!r}")
                self._degree[k] = d
            self._basis[d] = keys
        self._d: Dict[Key, LinComb] = {}
        for k, img in differential.items():
            if k not in self._degree:
                raise KeyError(f"{name}: differential given on unknown key {k!r}")
            clean = {t: c for t, c in img.items() if c}
            for t in clean:
                if self._degree.get(t) != self._degree[k] - 1:
                    raise ValueError(f"{name}: d({self.label(k)}) has term {t!r} of wrong degree")
            if clean:
                self._d[k] = clean

    # -- basic access
    def degrees(self) -> range:
        return range(self.window.min_degree, self.window.max_degree + 1)

    def basis(self, d: int) -> Tuple[Key, ...]:
        return self._basis.get(d, ())

    def dim(self, d: int) -> int:
        return len(self._basis.get(d, ()))

    def keys(self) -> Iterable[Key]:
        for d in sorted(self._basis):
            yield from self._basis[d]

    def __contains__(self, key: Key) -> bool:
        return key in self._degree

    def degree(self, key: Key) -> int:
        return self._degree[key]

    def d(self, key: Key) -> LinComb:
        return self._d.get(key, {})

    def d_lc(self, lc: Mapping[Key, int]) -> LinComb:
        return apply_linear(self.d, lc)

    def label(self, key: Key) -> str:
        return self._labeler(key)

    @property
    def labeler(self) -> Callable[[Key], str]:
        return self._labeler

    @cached_property
    def _index(self) -> Dict[Key, int]:
        out = {}
        for keys in self._basis.values():
            for i, k in enumerate(keys):
                out[k] = i
        return out

    def index(self, key: Key) -> int:
        return self._index[key]

    def matrix(self, d: int) -> List[Tuple[int, int, int]]:
        """Triplets (row, col, coeff) of the differential C_d -> C_{d-1}."""
        idx = self._index
        out = []
        for j, k in enumerate(self.basis(d)):
            for t, c in sorted(self.d(k).items(), key=lambda tc: idx[tc[0]]):
                out.append((idx[t], j, c))
        return out

    def dense_matrix(self, d: int) -> List[List[int]]:
        rows = self.dim(d - 1)
        cols = self.dim(d)
        out = [[0] * cols for _ in range(rows)]
        for r, c, v in self.matrix(d):
            out[r][c] = v
        return out

    @cached_property
    def _codifferential(self) -> Dict[Key, LinComb]:
        out: Dict[Key, LinComb] = {}
        for k, img in self._d.items():
            for t, c in img.items():
                out.setdefault(t, {})[k] = c
        return out

    def coboundary_terms(self, key: Key) -> LinComb:
        """All y with ``key`` in d(y), mapped to that coefficient."""
        return self._codifferential.get(key, {})

    def check_d_squared(self) -> List[Key]:
        """Basis keys on which d d is nonzero (empty list means d^2 = 0)."""
        return [k for k in self.keys() if self.d_lc(self.d(k))]

    def relabel(self, fn: Callable[[Key], Key], name: Optional[str] = None,
                labeler: Optional[Callable[[Key], str]] = None) -> "ChainComplex":
        basis = {d: [fn(k) for k in ks] for d, ks in self._basis.items()}
        diff = {fn(k): {fn(t): c for t, c in img.items()} for k, img in self._d.items()}
        return ChainComplex(basis, diff, self.window, name or self.name, labeler)

    def restrict_window(self, window: TruncationWindow) -> "ChainComplex":
        basis = {d: ks for d, ks in self._basis.items() if window.contains(d)}
        keep = {k for ks in basis.values() for k in ks}
        diff = {k: {t: c for t, c in img.items() if t in keep}
                for k, img in self._d.items() if k in keep}
        return ChainComplex(basis, diff, window, self.name, self._labeler)

    def signature(self) -> tuple:
        """Label-level content used for bit-exact comparisons."""
        degs = tuple((d, tuple(self.label(k) for k in self.basis(d))) for d in sorted(self._basis))
        mats = tuple((d, tuple(self.matrix(d))) for d in sorted(self._basis))
        w = self.window
        return (w.min_degree, w.max_degree, w.truncated, degs, mats)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        dims = {d: len(ks) for d, ks in self._basis.items()}
        return f"ChainComplex({self.name!r}, window={self.window}, dims={dims})"


def zero_complex(window: TruncationWindow, name: str = "0") -> ChainComplex:
    return ChainComplex({}, {}, window, name)


@dataclass
class Element:
    """A homogeneous chain, coefficients keyed by basis key."""

    complex: ChainComplex
    degree: int
    coefficients: LinComb = field(default_factory=dict)

    def __post_init__(self):
        for k, c in self.coefficients.items():
            if self.complex.degree(k) != self.degree:
                raise ValueError(f"{k!r} is not in degree {self.degree}")
        self.coefficients = {k: c for k, c in self.coefficients.items() if c}

    def __add__(self, other: "Element") -> "Element":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.coefficients)
        add_into(out, other.coefficients)
        return Element(self.complex, self.degree, out)

    def __rmul__(self, s: int) -> "Element":
        return Element(self.complex, self.degree, {k: s * c for k, c in self.coefficients.items()})

    def boundary(self) -> "Element":
        return Element(self.complex, self.degree - 1, self.complex.d_lc(self.coefficients))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and self.degree == other.degree
                and self.coefficients == other.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients


class GradedMap:
    """A homogeneous map of degree ``degree`` given on source basis keys.

    Keys missing from ``columns`` map to zero.
    """

    def __init__(self, source: ChainComplex, target: ChainComplex, degree: int,
                 columns: Mapping[Key, Mapping[Key, int]], name: str = "", check: bool = True):
        self.source = source
        self.target = target
        self.degree = degree
        self.name = name
        cols: Dict[Key, LinComb] = {}
        for k, img in columns.items():
            clean = {t: c for t, c in img.items() if c}
            if not clean:
                continue
            if check:
                if k not in source:
                    raise KeyError(f"{name}: unknown source key {k!r}")
                dk = source.degree(k) + degree
                for t in clean:
                    if t not in target or target.degree(t) != dk:
                        raise ValueError(f"{name}: image of {source.label(k)} has bad term {t!r}")
            cols[k] = clean
        self.columns = cols

    def __call__(self, key: Key) -> LinComb:
        return self.columns.get(key, {})

    def apply(self, lc: Mapping[Key, int]) -> LinComb:
        return apply_linear(self, lc)

    def blocks(self) -> Dict[int, List[Tuple[int, int, int]]]:
        """Per source degree d, triplets of the block C_d -> D_{d+k}."""
        out = {}
        for d in self.source.degrees():
            trip = []
            for j, k in enumerate(self.source.basis(d)):
                for t, c in self(k).items():
                    trip.append((self.target.index(t), j, c))
            trip.sort()
            out[d] = trip
        return out

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """``self`` after ``inner``."""
        cols = {k: self.apply(img) for k, img in inner.columns.items()}
        return GradedMap(inner.source, self.target, self.degree + inner.degree, cols,
                         f"{self.name}∘{inner.name}", check=False)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        cols = {k: dict(v) for k, v in self.columns.items()}
        for k, img in other.columns.items():
            add_into(cols.setdefault(k, {}), img)
        return GradedMap(self.source, self.target, self.degree, cols, check=False)

    def __rmul__(self, s: int) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {k: {t: s * c for t, c in v.items()} for k, v in self.columns.items()},
                         self.name, check=False)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-1) * other

    def is_zero(self) -> bool:
        return not self.columns

    def nonzero_keys(self) -> List[Key]:
        return list(self.columns)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedMap) and self.degree == other.degree
                and self.columns == other.columns)


def identity_map(C: ChainComplex) -> GradedMap:
    return GradedMap(C, C, 0, {k: {k: 1} for k in C.keys()}, "id", check=False)


def differential_map(C: ChainComplex) -> GradedMap:
    return GradedMap(C, C, -1, {k: C.d(k) for k in C.keys()}, "d", check=False)


def boundary_of_map(f: GradedMap) -> GradedMap:
    """``d f - (-1)^|f| f d``; zero exactly when ``f`` is a chain map."""
    s = -1 if f.degree % 2 else 1
    cols: Dict[Key, LinComb] = {}
    for k in f.source.keys():
        out = f.target.d_lc(f(k))
        add_into(out, f.apply(f.source.d(k)), -s)
        if out:
            cols[k] = out
    return GradedMap(f.source, f.target, f.degree - 1, cols, f"∂{f.name}", check=False)


def is_chain_map(f: GradedMap) -> bool:
    return boundary_of_map(f).is_zero()


# -- tensor products -------------------------------------------------------

def _tensor_window(wa: TruncationWindow, wb: TruncationWindow) -> TruncationWindow:
    lo = wa.min_degree + wb.min_degree
    tops = []
    if wa.truncated:
        tops.append(wa.max_degree + wb.min_degree)
    if wb.truncated:
        tops.append(wb.max_degree + wa.min_degree)
    hi = min(tops) if tops else wa.max_degree + wb.max_degree
    return TruncationWindow(lo, hi, None, bool(tops))


def tensor_complex(A: ChainComplex, B: ChainComplex, name: str = "") -> ChainComplex:
    """A x B with keys ``(a, b)`` ordered by (deg a, a, b)."""
    w = _tensor_window(A.window, B.window)
    basis: Dict[int, List[Key]] = {}
    for da in A.degrees():
        for a in A.basis(da):
            for db in B.degrees():
                if not w.contains(da + db):
                    continue
                for b in B.basis(db):
                    basis.setdefault(da + db, []).append((a, b))
    diff = {}
    for keys in basis.values():
        for (a, b) in keys:
            da = A.degree(a)
            out: LinComb = {}
            for x, c in A.d(a).items():
                add_to(out, (x, b), c)
            s = -1 if da % 2 else 1
            for y, c in B.d(b).items():
                add_to(out, (a, y), s * c)
            diff[(a, b)] = out
    la, lb = A.labeler, B.labeler
    return ChainComplex(basis, diff, w, name or f"{A.name}⊗{B.name}",
                        lambda k: tensor_label(la(k[0]), lb(k[1])))


def tensor_map(f: GradedMap, g: GradedMap) -> GradedMap:
    """f x g on the tensor of the sources, with the Koszul sign."""
    src = tensor_complex(f.source, g.source)
    tgt = tensor_complex(f.target, g.target)
    cols = {}
    for (a, b) in src.keys():
        s = -1 if (g.degree * f.source.degree(a)) % 2 else 1
        out: LinComb = {}
        for x, c in f(a).items():
            for y, e in g(b).items():
                if (x, y) in tgt:
                    add_to(out, (x, y), s * c * e)
        if out:
            cols[(a, b)] = out
    return GradedMap(src, tgt, f.degree + g.degree, cols, f"{f.name}⊗{g.name}", check=False)


def transpose(A: ChainComplex, B: ChainComplex) -> GradedMap:
    """T(a x b) = (-1)^(|a||b|) b x a."""
    src = tensor_complex(A, B)
    tgt = tensor_complex(B, A)
    cols = {}
    for (a, b) in src.keys():
        s = -1 if (A.degree(a) * B.degree(b)) % 2 else 1
        cols[(a, b)] = {(b, a): s}
    return GradedMap(src, tgt, 0, cols, "T", check=False)


def tensor_power_window(w: TruncationWindow, n: int) -> TruncationWindow:
    out = w
    for _ in range(n - 1):
        out = _tensor_window(out, w)
    return out


def koszul_permute(sigma: Sequence[int], word: Sequence[Key],
                   degree: Callable[[Key], int]) -> Tuple[int, Tuple[Key, ...]]:
    """Move factor j of ``word`` to position sigma(j); returns (sign, new word)."""
    n = len(word)
    out: List[Key] = [None] * n
    for j, x in enumerate(word):
        out[sigma[j] - 1] = x
    odd = [degree(x) % 2 for x in word]
    flips = 0
    for i in range(n):
        if not odd[i]:
            continue
        si = sigma[i]
        for j in range(i + 1, n):
            if odd[j] and sigma[j] < si:
                flips += 1
    return (-1 if flips % 2 else 1), tuple(out)


def tensor_word_d(word: Tuple[Key, ...], C: ChainComplex) -> LinComb:
    """Differential of a flat tensor word in C^n."""
    out: LinComb = {}
    pre = 0
    for j, x in enumerate(word):
        s = -1 if pre % 2 else 1
        for y, c in C.d(x).items():
            add_to(out, word[:j] + (y,) + word[j + 1:], s * c)
        pre += C.degree(x)
    return out


def tensor_power(C: ChainComplex, n: int, name: str = "") -> ChainComplex:
    """C^n with flat tuple keys (x_1, ..., x_n)."""
    if n == 0:
        return ChainComplex({0: [()]}, {}, TruncationWindow(0, 0, None, False), name or "Z",
                            lambda k: "1")
    w = tensor_power_window(C.window, n)
    level = [((), 0)]
    for _ in range(n):
        level = [(t + (x,), d + C.degree(x)) for t, d in level for x in C.keys()]
    words: Dict[int, List[Tuple[Key, ...]]] = {}
    for t, d in level:
        if w.contains(d):
            words.setdefault(d, []).append(t)
    diff = {t: tensor_word_d(t, C) for ts in words.values() for t in ts}
    lab = C.labeler
    return ChainComplex(words, diff, w, name or f"{C.name}^{n}",
                        lambda t: tensor_label(*(lab(x) for x in t)) if t else "1")


# -- suspension ------------------------------------------------------------

def suspend(C: ChainComplex, k: int, name: str = "") -> ChainComplex:
    if k == 0:
        return C
    s = -1 if k % 2 else 1
    basis = {d + k: C.basis(d) for d in C.degrees() if C.basis(d)}
    diff = {x: {y: s * c for y, c in C.d(x).items()} for x in C.keys()}
    return ChainComplex(basis, diff, C.window.shift(k), name or f"Σ^{k}{C.name}", C.labeler)


def shift_map(C: ChainComplex, k: int) -> GradedMap:
    """The degree-k identity on keys, C -> suspend(C, k); a chain map."""
    return GradedMap(C, suspend(C, k), k, {x: {x: 1} for x in C.keys()}, f"↑^{k}", check=False)


def susp_iso_L(C: ChainComplex, D: ChainComplex, k: int) -> GradedMap:
    """Σ^-k C x D -> Σ^-k (C x D), c x d -> c x d."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    src = tensor_complex(suspend(C, -k), D)
    tgt = suspend(tensor_complex(C, D), -k)
    cols = {key: {key: 1} for key in src.keys() if key in tgt}
    return GradedMap(src, tgt, 0, cols, f"L_{k}", check=False)


def susp_iso_M(C: ChainComplex, D: ChainComplex, k: int) -> GradedMap:
    """C x Σ^-k D -> Σ^-k (C x D), c x d -> (-1)^(|c| k) c x d."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    src = tensor_complex(C, suspend(D, -k))
    tgt = suspend(tensor_complex(C, D), -k)
    cols = {}
    for key in src.keys():
        if key in tgt:
            cols[key] = {key: -1 if (C.degree(key[0]) * k) % 2 else 1}
    return GradedMap(src, tgt, 0, cols, f"M_{k}", check=False)


# -- homology --------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic torsion summands, ascending, each dividing the next."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(t) for t in data["torsion"]))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def check_range(window: TruncationWindow, lo: int, hi: int, what: str = "homology") -> None:
    if lo > hi:
        raise WindowError(f"empty range {lo}..{hi}")
    top = window.homology_top()
    if lo < window.min_degree or hi > top:
        raise WindowError(
            f"{what} range {lo}..{hi} not determined by window "
            f"[{window.min_degree}, {window.max_degree}]"
            + (" (truncated: top degree needs the next differential)" if window.truncated else ""))


def _invariants(C: ChainComplex, d: int) -> List[int]:
    cache = C.__dict__.setdefault("_inv_cache", {})
    if d not in cache:
        cache[d] = invariant_factors(C.matrix(d), C.dim(d - 1), C.dim(d))
    return cache[d]


def homology(C: ChainComplex, lo: int, hi: int) -> List[AbelianGroup]:
    """H_d(C) for lo <= d <= hi."""
    check_range(C.window, lo, hi)
    out = []
    for d in range(lo, hi + 1):
        rank_out = len(_invariants(C, d)) if C.dim(d - 1) and C.dim(d) else 0
        inv_in = _invariants(C, d + 1) if C.dim(d + 1) and C.dim(d) else []
        free = C.dim(d) - rank_out - len(inv_in)
        out.append(AbelianGroup(free, tuple(t for t in inv_in if t != 1)))
    return out


def _kernel_basis(C: ChainComplex, d: int) -> List[List[int]]:
    n = C.dim(d)
    if not n:
        return []
    if not C.dim(d - 1):
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return integer_kernel(C.dense_matrix(d), n)


def quasi_iso_witness(f: GradedMap, lo: int, hi: int) -> Optional[int]:
    """First degree in lo..hi where f fails to induce an isomorphism, else None.

    f_* is iso iff it is onto and the two homology groups agree: a surjection
    between isomorphic finitely generated abelian groups is injective.
    """
    if f.degree != 0:
        raise ValueError("quasi-isomorphisms have degree 0")
    if not is_chain_map(f):
        raise ValueError(f"{f.name or 'map'} is not a chain map")
    A, B = f.source, f.target
    check_range(A.window, lo, hi)
    check_range(B.window, lo, hi)
    HA = homology(A, lo, hi)
    HB = homology(B, lo, hi)
    for d, ha, hb in zip(range(lo, hi + 1), HA, HB):
        if ha != hb:
            return d
        if hb.is_zero():
            continue
        cols = []
        for z in _kernel_basis(A, d):
            img: LinComb = {}
            for j, c in enumerate(z):
                if c:
                    add_into(img, f(A.basis(d)[j]), c)
            cols.append(img)
        for x in B.basis(d + 1):
            cols.append(B.d(x))
        trip = [(B.index(t), j, c) for j, col in enumerate(cols) for t, c in col.items()]
        inv = invariant_factors(trip, B.dim(d), len(cols)) if trip else []
        zrank = B.dim(d) - (len(_invariants(B, d)) if B.dim(d - 1) else 0)
        if len(inv) != zrank or any(t != 1 for t in inv):
            return d
    return None


def is_quasi_iso(f: GradedMap, lo: int, hi: int) -> bool:
    return quasi_iso_witness(f, lo, hi) is None


# -- JSON ------------------------------------------------------------------

def complex_to_json(C: ChainComplex) -> dict:
    labels = [C.label(k) for k in C.keys()]
    if len(set(labels)) != len(labels):
        raise ValueError(f"{C.name}: basis labels are not unique")
    degrees = [{"d": d, "basis": [C.label(k) for k in C.basis(d)]}
               for d in C.degrees() if C.basis(d)]
    diffs = [{"d": d, "entries": [list(e) for e in C.matrix(d)]}
             for d in C.degrees() if C.basis(d) and C.matrix(d)]
    return {"name": C.name, "window": C.window.to_json(), "degrees": degrees,
            "differential": diffs}


def complex_from_json(data: Mapping) -> ChainComplex:
    """Rebuild a complex whose keys are its string labels."""
    try:
        window = TruncationWindow.from_json(data["window"])
        basis = {int(e["d"]): [str(l) for l in e["basis"]] for e in data["degrees"]}
        diff: Dict[Key, LinComb] = {}
        for e in data.get("differential", []):
            d = int(e["d"])
            src, tgt = basis.get(d, []), basis.get(d - 1, [])
            for r, c, v in e["entries"]:
                add_to(diff.setdefault(src[c], {}), tgt[r], int(v))
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed complex JSON: {exc}") from exc
    return ChainComplex(basis, diff, window, str(data.get("name", "")), str)


def homology_to_json(groups: Sequence[AbelianGroup], lo: int) -> list:
    return [dict(d=lo + i, **g.to_json()) for i, g in enumerate(groups)]
