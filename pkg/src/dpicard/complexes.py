"""Bounded complexes of indecomposable projectives and the homotopy category.

Conventions (cohomological):

* ``X.terms[d]`` is the tuple of projective labels in degree ``d``; the
  differential ``X.diff[d]`` maps degree ``d`` to ``d+1`` and is a sparse
  block matrix ``{(row, col): vec}`` with ``vec`` a Hom vector from summand
  ``col`` of degree ``d`` to summand ``row`` of degree ``d+1``.
* ``shift(X, s)`` moves degree ``d`` to ``d-s`` and multiplies the
  differential by ``(-1)^s``.
* ``cone(f)`` for ``f: X -> Y`` has ``Y^d + X^{d+1}`` in degree ``d`` with
  differential ``[[d_Y, f], [0, -d_X]]``.
* A map of degree ``s`` sends ``X^d`` to ``Y^{d+s}``; the Hom-complex
  differential is ``D_s(h) = d_Y h - (-1)^s h d_X``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
import random

from .algebra import BasedAlgebra, vec_add, vec_neg, vec_scale
from .linalg import Echelon


class ComplexError(ValueError):
    pass


def _clean(F, block: dict) -> dict:
    return {k: v for k, v in block.items() if v}


def block_compose(alg: BasedAlgebra, A, B, C, G: dict, Fm: dict) -> dict:
    """Compose block matrices ``G: B -> C`` after ``Fm: A -> B``; A, B, C are label tuples."""
    if not G or not Fm:
        return {}
    F = alg.field
    byrow: dict = {}
    for (r, c), v in Fm.items():
        byrow.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r2, c2), g in G.items():
        lst = byrow.get(c2)
        if not lst:
            continue
        b = B[c2]
        cl = C[r2]
        for c, v in lst:
            w = alg.compose(A[c], b, cl, g, v)
            if w:
                key = (r2, c)
                prev = out.get(key)
                if prev is None:
                    out[key] = w
                else:
                    nv = vec_add(F, prev, w)
                    if nv:
                        out[key] = nv
                    else:
                        del out[key]
    return out


def block_add(F, M: dict, N: dict, scale=None) -> dict:
    out = dict(M)
    for k, v in N.items():
        nv = vec_add(F, out.get(k, {}), v, scale)
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def block_scale(F, s, M: dict) -> dict:
    if F.is_zero(s):
        return {}
    return {k: vec_scale(F, s, v) for k, v in M.items()}


class ProjComplex:
    """An immutable bounded complex of indecomposable projectives."""

    __slots__ = ("algebra", "terms", "diff", "_hash")

    def __init__(self, algebra: BasedAlgebra, terms: dict, diff: dict | None = None, check: bool = True):
        self.algebra = algebra
        self.terms = {d: tuple(t) for d, t in terms.items() if len(t)}
        diff = diff or {}
        clean = {}
        for d, block in diff.items():
            block = {k: v for k, v in block.items() if v}
            if block:
                clean[d] = block
        self.diff = clean
        self._hash = None
        if check:
            self.validate()

    # -- basic access -----------------------------------------------------
    def term(self, d) -> tuple:
        return self.terms.get(d, ())

    def degrees(self):
        return sorted(self.terms)

    @property
    def dmin(self):
        return min(self.terms) if self.terms else 0

    @property
    def dmax(self):
        return max(self.terms) if self.terms else 0

    def is_zero(self) -> bool:
        return not self.terms

    def size(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def d(self, p) -> dict:
        return self.diff.get(p, {})

    def validate(self):
        alg = self.algebra
        for p, block in self.diff.items():
            src, tgt = self.term(p), self.term(p + 1)
            for (r, c), v in block.items():
                if not (0 <= r < len(tgt) and 0 <= c < len(src)):
                    raise ComplexError(f"differential entry ({r},{c}) out of range in degree {p}")
                n = alg.dim_hom(src[c], tgt[r])
                if any(not 0 <= k < n for k in v):
                    raise ComplexError(f"entry ({r},{c}) in degree {p} is not a map {src[c]}->{tgt[r]}")
        for p in self.diff:
            if p + 1 in self.diff:
                sq = block_compose(alg, self.term(p), self.term(p + 1), self.term(p + 2),
                                   self.diff[p + 1], self.diff[p])
                if sq:
                    raise ComplexError(f"d^2 != 0 starting in degree {p}")

    def graded_classes(self) -> dict:
        """Degree -> multiset of isomorphism classes of summands."""
        iso = self.algebra.iso_class
        return {d: Counter(iso(a) for a in t) for d, t in self.terms.items()}

    def key(self):
        return (tuple(sorted((d, t) for d, t in self.terms.items())),
                tuple(sorted((d, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in b.items())))
                             for d, b in self.diff.items())))

    def __eq__(self, other):
        return isinstance(other, ProjComplex) and other.algebra is self.algebra and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        parts = []
        for d in self.degrees():
            labs = ",".join(self.algebra.format_label(a) for a in self.terms[d])
            parts.append(f"{d}:[{labs}]")
        return "ProjComplex(" + " ".join(parts) + ")"

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, algebra):
        return cls(algebra, {}, {})

    @classmethod
    def stalk(cls, algebra, label, degree: int = 0):
        return cls(algebra, {degree: (label,)}, {})

    @classmethod
    def from_maps(cls, algebra, labels_by_degree: dict, entries: dict):
        """``entries[d][(r, c)]`` may be a HomElement or a raw vector."""
        diff = {}
        for d, block in entries.items():
            diff[d] = {}
            for k, v in block.items():
                diff[d][k] = dict(getattr(v, "vec", v))
        return cls(algebra, labels_by_degree, diff)

    # -- serialization ------------------------------------------------------
    def text(self) -> str:
        alg = self.algebra
        lo, hi = (self.dmin, self.dmax) if self.terms else (0, 0)
        lines = [f"complex over {alg.name} degrees {lo}..{hi}"]
        for d in range(lo, hi + 1):
            labs = " ".join(alg.format_label(a) for a in self.term(d))
            lines.append(f"  {d}: {labs}".rstrip())
        for d in sorted(self.diff):
            src, tgt = self.term(d), self.term(d + 1)
            for (r, c) in sorted(self.diff[d]):
                v = self.diff[d][(r, c)]
                lines.append(f"d{d} ({r},{c}) = {alg.format_label(src[c])}->{alg.format_label(tgt[r])}"
                             f" : {alg.format_vec(src[c], tgt[r], v)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, algebra, text: str):
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines or not lines[0].startswith("complex over"):
            raise ComplexError("missing 'complex over ... degrees a..b' header")
        terms: dict = {}
        diff: dict = {}
        for ln in lines[1:]:
            s = ln.strip()
            if s.startswith("d"):
                head, _, rest = s.partition("=")
                deg_txt, _, pos = head[1:].strip().partition(" ")
                r, c = (int(x) for x in pos.strip().strip("()").split(","))
                d = int(deg_txt)
                h = algebra.parse_hom(rest.strip())
                src, tgt = terms.get(d, ()), terms.get(d + 1, ())
                if c >= len(src) or r >= len(tgt) or src[c] != h.src or tgt[r] != h.tgt:
                    raise ComplexError(f"entry {s!r} does not match the declared summands")
                diff.setdefault(d, {})[(r, c)] = h.vec
            else:
                deg_txt, _, labs = s.partition(":")
                terms[int(deg_txt)] = tuple(algebra.parse_label(x) for x in labs.split())
        return cls(algebra, terms, diff)


class ChainMap:
    """A degree-``s`` map of graded objects ``X^d -> Y^{d+s}`` given by blocks."""

    __slots__ = ("src", "tgt", "comps", "degree")

    def __init__(self, src: ProjComplex, tgt: ProjComplex, comps: dict, degree: int = 0):
        self.src = src
        self.tgt = tgt
        self.degree = degree
        clean = {}
        for d, block in comps.items():
            block = {k: v for k, v in block.items() if v}
            if block:
                clean[d] = block
        self.comps = clean

    @property
    def algebra(self):
        return self.src.algebra

    def comp(self, d) -> dict:
        return self.comps.get(d, {})

    @classmethod
    def identity(cls, X: ProjComplex):
        alg = X.algebra
        return cls(X, X, {d: {(i, i): alg.identity(a) for i, a in enumerate(t)} for d, t in X.terms.items()})

    @classmethod
    def zero(cls, X, Y, degree=0):
        return cls(X, Y, {}, degree)

    def is_zero(self):
        return not self.comps

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        alg = self.algebra
        out = {}
        for d, block in other.comps.items():
            mid = d + other.degree
            g = self.comp(mid)
            if g:
                out[d] = block_compose(alg, other.src.term(d), self.src.term(mid),
                                       self.tgt.term(mid + self.degree), g, block)
        return ChainMap(other.src, self.tgt, out, self.degree + other.degree)

    def __add__(self, other):
        F = self.algebra.field
        out = dict(self.comps)
        for d, b in other.comps.items():
            out[d] = block_add(F, out.get(d, {}), b)
        return ChainMap(self.src, self.tgt, out, self.degree)

    def scale(self, s):
        F = self.algebra.field
        return ChainMap(self.src, self.tgt, {d: block_scale(F, s, b) for d, b in self.comps.items()}, self.degree)

    def __neg__(self):
        return self.scale(self.algebra.field.neg(self.algebra.field.one))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, ChainMap) and self.degree == other.degree
                and self.src == other.src and self.tgt == other.tgt and self.comps == other.comps)

    def __repr__(self):
        return f"ChainMap({self.src!r} -> {self.tgt!r}, degree {self.degree})"

    def boundary(self) -> dict:
        """``D_s(self) = d_Y f - (-1)^s f d_X`` as blocks by source degree."""
        return hom_differential(self.src, self.tgt, self.degree, self.comps)

    def is_chain_map(self) -> bool:
        return not self.boundary()

    def text(self) -> str:
        alg = self.algebra
        lines = [f"map of degree {self.degree}"]
        for d in sorted(self.comps):
            src, tgt = self.src.term(d), self.tgt.term(d + self.degree)
            for (r, c) in sorted(self.comps[d]):
                v = self.comps[d][(r, c)]
                lines.append(f"f{d} ({r},{c}) = {alg.format_label(src[c])}->{alg.format_label(tgt[r])}"
                             f" : {alg.format_vec(src[c], tgt[r], v)}")
        return "\n".join(lines) + "\n"


def hom_differential(X, Y, s, comps, eps=None) -> dict:
    """``d_Y h + eps h d_X`` for a degree-``s`` map ``h``; ``eps`` defaults to ``-(-1)^s``."""
    alg = X.algebra
    F = alg.field
    if eps is None:
        eps = 1 if s % 2 else -1
    out: dict = {}
    for d, block in comps.items():
        dy = Y.d(d + s)
        if dy:
            part = block_compose(alg, X.term(d), Y.term(d + s), Y.term(d + s + 1), dy, block)
            out[d] = block_add(F, out.get(d, {}), part)
        dx = X.d(d - 1)
        if dx:
            part = block_compose(alg, X.term(d - 1), X.term(d), Y.term(d + s), block, dx)
            out[d - 1] = block_add(F, out.get(d - 1, {}), part, F(eps))
    return {d: b for d, b in out.items() if b}


# ---------------------------------------------------------------------------
# combining complexes

def shift(X: ProjComplex, s: int) -> ProjComplex:
    if s == 0:
        return X
    F = X.algebra.field
    sign = F.one if s % 2 == 0 else F.neg(F.one)
    terms = {d - s: t for d, t in X.terms.items()}
    diff = {d - s: block_scale(F, sign, b) for d, b in X.diff.items()}
    return ProjComplex(X.algebra, terms, diff, check=False)


def shift_map(f: ChainMap, s: int) -> ChainMap:
    """``f[s]: X[s] -> Y[s]`` for a degree-0 map."""
    if s == 0:
        return f
    return ChainMap(shift(f.src, s), shift(f.tgt, s), {d - s: b for d, b in f.comps.items()}, f.degree)


def direct_sum(*complexes: ProjComplex):
    """Direct sum with summands concatenated in the given order.

    Returns the complex; ``direct_sum_data`` also gives the per-degree offsets.
    """
    return direct_sum_data(*complexes)[0]


def direct_sum_data(*complexes: ProjComplex):
    if not complexes:
        raise ComplexError("empty direct sum")
    alg = complexes[0].algebra
    degrees = sorted(set().union(*[set(X.terms) for X in complexes]))
    terms = {}
    offsets = []
    for X in complexes:
        offsets.append({})
    for d in degrees:
        acc = []
        for i, X in enumerate(complexes):
            offsets[i][d] = len(acc)
            acc.extend(X.term(d))
        terms[d] = tuple(acc)
    diff = {}
    for i, X in enumerate(complexes):
        for d, block in X.diff.items():
            o_src, o_tgt = offsets[i][d], offsets[i][d + 1]
            tgt = diff.setdefault(d, {})
            for (r, c), v in block.items():
                tgt[(r + o_tgt, c + o_src)] = v
    return ProjComplex(alg, terms, diff, check=False), offsets


def inclusion(S: ProjComplex, offsets: list, i: int, part: ProjComplex) -> ChainMap:
    alg = S.algebra
    comps = {d: {(offsets[i][d] + k, k): alg.identity(a) for k, a in enumerate(t)} for d, t in part.terms.items()}
    return ChainMap(part, S, comps)


def projection(S: ProjComplex, offsets: list, i: int, part: ProjComplex) -> ChainMap:
    alg = S.algebra
    comps = {d: {(k, offsets[i][d] + k): alg.identity(a) for k, a in enumerate(t)} for d, t in part.terms.items()}
    return ChainMap(S, part, comps)


def sum_maps(maps_src: list, maps_tgt: list, blocks: dict) -> ChainMap:
    """Assemble a map between direct sums from blocks ``{(j, i): ChainMap X_i -> Y_j}``."""
    S, so = direct_sum_data(*maps_src)
    T, to = direct_sum_data(*maps_tgt)
    F = S.algebra.field
    comps: dict = {}
    degree = None
    for (j, i), f in blocks.items():
        degree = f.degree if degree is None else degree
        for d, block in f.comps.items():
            cs, ct = so[i][d], to[j][d + f.degree]
            tgt = comps.setdefault(d, {})
            for (r, c), v in block.items():
                key = (r + ct, c + cs)
                nv = vec_add(F, tgt.get(key, {}), v)
                if nv:
                    tgt[key] = nv
                else:
                    tgt.pop(key, None)
    return ChainMap(S, T, comps, degree or 0)


def cone(f: ChainMap) -> ProjComplex:
    if f.degree != 0:
        raise ComplexError("cone needs a degree-0 map")
    X, Y = f.src, f.tgt
    F = X.algebra.field
    degrees = sorted(set(Y.terms) | {d - 1 for d in X.terms})
    terms = {d: Y.term(d) + X.term(d + 1) for d in degrees}
    diff = {}
    for d in degrees:
        ny = len(Y.term(d))
        ny1 = len(Y.term(d + 1))
        block = {}
        for (r, c), v in Y.d(d).items():
            block[(r, c)] = v
        for (r, c), v in f.comp(d + 1).items():
            block[(r, c + ny)] = v
        for (r, c), v in X.d(d + 1).items():
            block[(r + ny1, c + ny)] = vec_neg(F, v)
        if block:
            diff[d] = block
    return ProjComplex(X.algebra, terms, diff, check=False)


def cone_maps(f: ChainMap):
    """The maps ``Y -> cone(f)`` and ``cone(f) -> X[1]``."""
    C = cone(f)
    X, Y = f.src, f.tgt
    alg = X.algebra
    i = ChainMap(Y, C, {d: {(k, k): alg.identity(a) for k, a in enumerate(t)} for d, t in Y.terms.items()})
    X1 = shift(X, 1)
    comps = {}
    for d, t in X1.terms.items():
        ny = len(Y.term(d))
        comps[d] = {(k, k + ny): alg.identity(a) for k, a in enumerate(t)}
    p = ChainMap(C, X1, comps)
    return C, i, p


# ---------------------------------------------------------------------------
# linear algebra on map spaces

class MapSpace:
    """Coordinates on degree-``s`` maps ``X -> Y`` (all blocks, all basis elements)."""

    def __init__(self, X: ProjComplex, Y: ProjComplex, s: int):
        self.X, self.Y, self.s = X, Y, s
        alg = X.algebra
        self.vars = []
        for d in X.degrees():
            tgt = Y.term(d + s)
            if not tgt:
                continue
            for c, a in enumerate(X.term(d)):
                for r, b in enumerate(tgt):
                    for p in range(alg.dim_hom(a, b)):
                        self.vars.append((d, r, c, p))
        self.index = {v: i for i, v in enumerate(self.vars)}

    def __len__(self):
        return len(self.vars)

    def to_map(self, vec: dict) -> ChainMap:
        comps: dict = {}
        for j, x in vec.items():
            d, r, c, p = self.vars[j]
            blk = comps.setdefault(d, {})
            blk.setdefault((r, c), {})[p] = x
        return ChainMap(self.X, self.Y, comps, self.s)

    def to_vec(self, f: ChainMap) -> dict:
        out = {}
        for d, block in f.comps.items():
            for (r, c), v in block.items():
                for p, x in v.items():
                    out[self.index[(d, r, c, p)]] = x
        return out

    def columns(self, eps=None):
        """Images of the coordinate maps under ``d_Y h + eps h d_X`` keyed by (d, r, c, p)."""
        X, Y, s = self.X, self.Y, self.s
        alg = X.algebra
        F = alg.field
        if eps is None:
            eps = 1 if s % 2 else -1
        eps = F(eps)
        one = F.one
        cols = []
        for (d, r, c, p) in self.vars:
            col: dict = {}
            a = X.term(d)[c]
            b = Y.term(d + s)[r]
            unit = {p: one}
            tgt_next = Y.term(d + s + 1)
            for (r2, c2), g in Y.d(d + s).items():
                if c2 != r:
                    continue
                w = alg.compose(a, b, tgt_next[r2], g, unit)
                for q, x in w.items():
                    key = (d, r2, c, q)
                    col[key] = F.add(col.get(key, F.zero), x)
            src_prev = X.term(d - 1)
            for (r2, c2), g in X.d(d - 1).items():
                if r2 != c:
                    continue
                w = alg.compose(src_prev[c2], a, b, unit, g)
                for q, x in w.items():
                    key = (d - 1, r, c2, q)
                    col[key] = F.add(col.get(key, F.zero), F.mul(eps, x))
            cols.append({k: v for k, v in col.items() if not F.is_zero(v)})
        return cols


def _rows_from_columns(cols):
    keys: dict = {}
    rows: dict = {}
    for j, col in enumerate(cols):
        for k, v in col.items():
            i = keys.setdefault(k, len(keys))
            rows.setdefault(i, {})[j] = v
    return keys, rows


def _target_vec(comps: dict) -> dict:
    out = {}
    for d, block in comps.items():
        for (r, c), v in block.items():
            for q, x in v.items():
                out[(d, r, c, q)] = x
    return out


def solve_map_equation(X, Y, s, target: dict, eps=None):
    """A degree-``s`` map ``h`` with ``d_Y h + eps h d_X = target`` or None.

    ``target`` is a block dict by source degree for a degree ``s+1`` map.
    """
    space = MapSpace(X, Y, s)
    F = X.algebra.field
    tvec = _target_vec(target)
    if not tvec:
        return ChainMap(X, Y, {}, s)
    cols = space.columns(eps)
    keys, rows = _rows_from_columns(cols)
    n = len(space)
    ech = Echelon(F)
    for k, i in keys.items():
        row = dict(rows[i])
        b = tvec.get(k)
        if b is not None:
            row[n] = b
        ech.add(row)
    for k, b in tvec.items():
        if k not in keys and not F.is_zero(b):
            return None
    if n in ech.rows:
        return None
    sol = ech.particular_solution(n, n)
    return space.to_map(sol)


def chain_map_basis(X, Y, s: int = 0):
    """Basis of the cycles of degree ``s`` (maps X -> Y[s] commuting with d up to sign)."""
    space = MapSpace(X, Y, s)
    cols = space.columns()
    _, rows = _rows_from_columns(cols)
    ech = Echelon(X.algebra.field)
    for row in rows.values():
        ech.add(row)
    return space, ech.kernel(len(space))


def hom_space(X: ProjComplex, Y: ProjComplex, s: int = 0) -> list:
    """Basis of K(X, Y[s]) as degree-``s`` maps X -> Y."""
    F = X.algebra.field
    space, kernel = chain_map_basis(X, Y, s)
    if not kernel:
        return []
    prev = MapSpace(X, Y, s - 1)
    ech = Echelon(F)
    # boundaries live in the same coordinates as the current space
    for col in prev.columns():
        ech.add({space.index[k]: v for k, v in col.items()})
    out = []
    for v in kernel:
        if ech.add(dict(v)) is not None:
            out.append(space.to_map(v))
    return out


def hom_dim(X, Y, s: int = 0) -> int:
    return len(hom_space(X, Y, s))


def homotopy_solve(f: ChainMap):
    """A map ``h`` of degree ``s-1`` with ``f = d h - (-1)^(s-1) h d`` or None."""
    return solve_map_equation(f.src, f.tgt, f.degree - 1, f.comps)


def is_null_homotopic(f: ChainMap) -> bool:
    return homotopy_solve(f) is not None


def is_contractible(X: ProjComplex, use_homotopy: bool = False) -> bool:
    if use_homotopy:
        return is_null_homotopic(ChainMap.identity(X))
    return minimize(X).is_zero()


def is_homotopy_iso(f: ChainMap, use_homotopy: bool = False) -> bool:
    """True iff the cone of ``f`` is contractible."""
    return is_contractible(cone(f), use_homotopy)


def homotopic(f: ChainMap, g: ChainMap) -> bool:
    return is_null_homotopic(f - g)


# ---------------------------------------------------------------------------
# minimization

class _Work:
    """Mutable id-indexed copy of a complex used during Gaussian elimination."""

    def __init__(self, X: ProjComplex, track: bool):
        self.alg = X.algebra
        self.label = {}
        self.order = {}
        nid = 0
        self.ids = {}
        for d in X.degrees():
            lst = []
            for a in X.term(d):
                self.label[nid] = a
                lst.append(nid)
                nid += 1
            self.ids[d] = lst
        # diff[d][(rid, cid)]
        self.diff = {}
        for d, block in X.diff.items():
            src, tgt = self.ids[d], self.ids[d + 1]
            self.diff[d] = {(tgt[r], src[c]): v for (r, c), v in block.items()}
        self.track = track
        if track:
            # proj[d][(wid, xpos)]: X -> W ; incl[d][(xpos, wid)]: W -> X
            self.proj = {d: {(i, k): self.alg.identity(self.label[i]) for k, i in enumerate(lst)}
                         for d, lst in self.ids.items()}
            self.incl = {d: {(k, i): self.alg.identity(self.label[i]) for k, i in enumerate(lst)}
                         for d, lst in self.ids.items()}

    def find_unit(self):
        alg = self.alg
        for d in sorted(self.diff):
            for (r, c), v in sorted(self.diff[d].items()):
                if alg.is_unit(self.label[c], self.label[r], v):
                    return d, r, c
        return None

    def eliminate(self, p, r, c):
        alg = self.alg
        F = alg.field
        lab = self.label
        dp = self.diff[p]
        phi = dp[(r, c)]
        phinv = alg.inverse(lab[c], lab[r], phi)   # P_r -> P_c
        deltas = {b: v for (rr, b), v in dp.items() if rr == r and b != c}
        gammas = {e: v for (e, cc), v in dp.items() if cc == c and e != r}
        newdp = {k: v for k, v in dp.items() if k[0] != r and k[1] != c}
        for e, g in gammas.items():
            gp = alg.compose(lab[r], lab[c], lab[e], g, phinv)  # gamma phi^-1 : P_r -> P_e
            for b, dl in deltas.items():
                corr = alg.compose(lab[b], lab[r], lab[e], gp, dl)
                if corr:
                    nv = vec_add(F, newdp.get((e, b), {}), corr, F.neg(F.one))
                    if nv:
                        newdp[(e, b)] = nv
                    else:
                        newdp.pop((e, b), None)
        self.diff[p] = newdp
        if p - 1 in self.diff:
            self.diff[p - 1] = {k: v for k, v in self.diff[p - 1].items() if k[0] != c}
        if p + 1 in self.diff:
            self.diff[p + 1] = {k: v for k, v in self.diff[p + 1].items() if k[1] != r}
        if self.track:
            # projection: degree p drops row c; degree p+1 rows e get -gamma_e phi^-1 * row r
            self.proj[p] = {k: v for k, v in self.proj[p].items() if k[0] != c}
            pr = self.proj.get(p + 1, {})
            row_r = {x: v for (w, x), v in pr.items() if w == r}
            newpr = {k: v for k, v in pr.items() if k[0] != r}
            for e, g in gammas.items():
                gp = alg.compose(lab[r], lab[c], lab[e], g, phinv)
                for x, v in row_r.items():
                    corr = alg.compose(self._xlabel(p + 1, x), lab[r], lab[e], gp, v)
                    if corr:
                        nv = vec_add(F, newpr.get((e, x), {}), corr, F.neg(F.one))
                        if nv:
                            newpr[(e, x)] = nv
                        else:
                            newpr.pop((e, x), None)
            self.proj[p + 1] = newpr
            # inclusion: degree p columns b get col c * (-phi^-1 delta_b); drop col c; degree p+1 drop col r
            inc = self.incl[p]
            col_c = {x: v for (x, w), v in inc.items() if w == c}
            newinc = {k: v for k, v in inc.items() if k[1] != c}
            for b, dl in deltas.items():
                pd = alg.compose(lab[b], lab[r], lab[c], phinv, dl)  # phi^-1 delta_b: P_b -> P_c
                for x, v in col_c.items():
                    corr = alg.compose(lab[b], lab[c], self._xlabel(p, x), v, pd)
                    if corr:
                        nv = vec_add(F, newinc.get((x, b), {}), corr, F.neg(F.one))
                        if nv:
                            newinc[(x, b)] = nv
                        else:
                            newinc.pop((x, b), None)
            self.incl[p] = newinc
            self.incl[p + 1] = {k: v for k, v in self.incl.get(p + 1, {}).items() if k[1] != r}
        self.ids[p] = [i for i in self.ids[p] if i != c]
        self.ids[p + 1] = [i for i in self.ids[p + 1] if i != r]

    def _xlabel(self, d, pos):
        return self.xterms[d][pos]

    def result(self, X):
        terms = {d: tuple(self.label[i] for i in lst) for d, lst in self.ids.items() if lst}
        pos = {d: {i: k for k, i in enumerate(lst)} for d, lst in self.ids.items()}
        diff = {}
        for d, block in self.diff.items():
            if not block:
                continue
            diff[d] = {(pos[d + 1][r], pos[d][c]): v for (r, c), v in block.items()}
        W = ProjComplex(self.alg, terms, diff, check=False)
        if not self.track:
            return W, None, None
        proj = {}
        for d, block in self.proj.items():
            if block:
                proj[d] = {(pos[d][w], x): v for (w, x), v in block.items()}
        incl = {}
        for d, block in self.incl.items():
            if block:
                incl[d] = {(x, pos[d][w]): v for (x, w), v in block.items()}
        return W, ChainMap(X, W, proj), ChainMap(W, X, incl)


def minimize(X: ProjComplex, with_maps: bool = False):
    """Remove contractible summands by Gaussian elimination on unit entries.

    With ``with_maps`` returns ``(M, p, i)`` where ``p: X -> M`` and
    ``i: M -> X`` are mutually inverse homotopy equivalences.
    """
    w = _Work(X, with_maps)
    w.xterms = X.terms
    while True:
        hit = w.find_unit()
        if hit is None:
            break
        w.eliminate(*hit)
    W, p, i = w.result(X)
    if with_maps:
        return W, p, i
    return W


def is_minimal(X: ProjComplex) -> bool:
    alg = X.algebra
    for d, block in X.diff.items():
        for (r, c), v in block.items():
            if alg.is_unit(X.term(d)[c], X.term(d + 1)[r], v):
                return False
    return True


# ---------------------------------------------------------------------------
# isomorphism search

@dataclass
class IsoResult:
    status: str                       # "iso", "not_iso" or "unknown"
    witness: ChainMap | None = None   # map between the original complexes
    minimal_witness: ChainMap | None = None
    reason: str = ""
    samples: int = 0
    extra: dict = dc_field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == "iso"

    def __bool__(self):
        return self.found


def _top_blocks(f: ChainMap):
    """Per degree and iso class: square matrix of top coefficients of ``f``."""
    alg = f.algebra
    F = alg.field
    X, Y = f.src, f.tgt
    out = {}
    for d in X.degrees():
        src, tgt = X.term(d), Y.term(d)
        classes = {}
        for c, a in enumerate(src):
            classes.setdefault(alg.iso_class(a), ([], []))[0].append(c)
        for r, b in enumerate(tgt):
            classes.setdefault(alg.iso_class(b), ([], []))[1].append(r)
        block = f.comp(d)
        for cls, (cols, rows) in classes.items():
            mat = []
            for r in rows:
                row = []
                for c in cols:
                    v = block.get((r, c), {})
                    top = alg.top_index(src[c], tgt[r])
                    row.append(v.get(top, F.zero) if top is not None else F.zero)
                mat.append(row)
            out[(d, cls)] = mat
    return out


def _rank(F, mat) -> int:
    ech = Echelon(F)
    for row in mat:
        ech.add({j: x for j, x in enumerate(row) if not F.is_zero(x)})
    return len(ech)


def is_degreewise_iso(f: ChainMap) -> bool:
    """For maps between minimal complexes with matching graded classes."""
    F = f.algebra.field
    for mat in _top_blocks(f).values():
        n = len(mat)
        if n == 0:
            continue
        if len(mat[0]) != n or _rank(F, mat) < n:
            return False
    return True


def find_iso(X: ProjComplex, Y: ProjComplex, budget: int = 64, seed: int = 0,
             verify: bool = True) -> IsoResult:
    """Decide whether X and Y are isomorphic in the homotopy category."""
    if X.algebra is not Y.algebra:
        raise ComplexError("complexes over different algebras")
    alg = X.algebra
    F = alg.field
    Xm, px, ix = minimize(X, with_maps=True)
    Ym, py, iy = minimize(Y, with_maps=True)
    gx, gy = Xm.graded_classes(), Ym.graded_classes()
    if gx != gy:
        return IsoResult("not_iso", reason=f"graded classes differ: {_fmt_classes(gx)} vs {_fmt_classes(gy)}")
    if Xm.is_zero():
        w = ChainMap(X, Y, {})
        return IsoResult("iso", witness=w, minimal_witness=ChainMap(Xm, Ym, {}))
    space, kernel = chain_map_basis(Xm, Ym, 0)
    # structural obstruction: a row or column of a top block that vanishes for every cycle
    maps = [space.to_map(v) for v in kernel]
    blocks = [_top_blocks(f) for f in maps]
    ref = _top_blocks(ChainMap(Xm, Ym, {}))
    for key, mat in ref.items():
        n = len(mat)
        for i in range(n):
            if all(all(F.is_zero(x) for x in b[key][i]) for b in blocks):
                return IsoResult("not_iso", reason=f"degree {key[0]}: a target summand is never hit")
            if all(all(F.is_zero(b[key][r][i]) for r in range(n)) for b in blocks):
                return IsoResult("not_iso", reason=f"degree {key[0]}: a source summand is never mapped onto")
    rng = random.Random(seed)

    def finish(vec, samples):
        f = space.to_map(vec)
        witness = iy.compose(f).compose(px)
        res = IsoResult("iso", witness=witness, minimal_witness=f, samples=samples)
        if verify and not is_homotopy_iso(witness):
            raise ComplexError("internal error: certified isomorphism failed verification")
        return res

    samples = 0
    for _ in range(budget):
        samples += 1
        vec: dict = {}
        for v in kernel:
            vec = vec_add(F, vec, v, F.random(rng))
        if is_degreewise_iso(space.to_map(vec)):
            return finish(vec, samples)
    for v in kernel:
        samples += 1
        if is_degreewise_iso(space.to_map(v)):
            return finish(v, samples)
    for a in range(len(kernel)):
        for b in range(a + 1, len(kernel)):
            samples += 1
            vec = vec_add(F, kernel[a], kernel[b])
            if is_degreewise_iso(space.to_map(vec)):
                return finish(vec, samples)
    return IsoResult("unknown", reason="budget exhausted", samples=samples)


def _fmt_classes(g):
    return {d: dict(sorted(c.items(), key=lambda kv: str(kv[0]))) for d, c in sorted(g.items())}
