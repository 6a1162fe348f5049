"""Equivalence data S: P_B -> add H, the totalization functor F_S, the
standard equivalences H_l and Q_l of a Nakayama algebra, and functor words.

Functor words are applied left to right: ``"H0 Q1 Q1"`` means ``Q1(Q1(H0(X)))``.
"""
from __future__ import annotations

from dataclasses import dataclass
import re

from .algebra import BasedAlgebra, vec_add
from .complexes import (
    ChainMap, ComplexError, ProjComplex, block_scale, direct_sum_data,
    find_iso, is_homotopy_iso, is_null_homotopic, minimize, shift, shift_map,
    solve_map_equation,
)
from .nakayama import Automorphism, NakayamaAlgebra


class EquivalenceError(ValueError):
    pass


class EquivalenceData:
    """An additive functor S from projectives of ``source`` to complexes over ``target``.

    ``objects(a)`` gives S(P_a); ``basis_map(a, b, p)`` gives the chain map
    S(x) for the basis element ``p`` of Hom(P_a, P_b).
    """

    def __init__(self, source: BasedAlgebra, target: BasedAlgebra, objects, basis_map, name: str = "S"):
        self.source = source
        self.target = target
        self.name = name
        self._objects = objects if callable(objects) else objects.__getitem__
        self._basis_map = basis_map
        self._obj_cache: dict = {}
        self._map_cache: dict = {}

    def obj(self, a) -> ProjComplex:
        X = self._obj_cache.get(a)
        if X is None:
            X = self._objects(a)
            self._obj_cache[a] = X
        return X

    def basis_image(self, a, b, p) -> ChainMap:
        key = (a, b, p)
        f = self._map_cache.get(key)
        if f is None:
            f = self._basis_map(a, b, p)
            if f.src != self.obj(a) or f.tgt != self.obj(b):
                raise EquivalenceError(f"{self.name}: image of a basis map {a}->{b} has wrong endpoints")
            self._map_cache[key] = f
        return f

    def hom(self, a, b, vec: dict) -> ChainMap:
        """S applied to the morphism ``vec`` in Hom(P_a, P_b)."""
        F = self.target.field
        out = ChainMap(self.obj(a), self.obj(b), {})
        for p, x in vec.items():
            out = out + self.basis_image(a, b, p).scale(F(x))
        return out

    # -- construction from arrow images ------------------------------------
    @classmethod
    def from_arrows(cls, source: NakayamaAlgebra, target: BasedAlgebra, objects, arrows, name="S",
                    validate: bool = True):
        """Data over a Nakayama algebra given by S(P_i) and S(beta_i): S(P_i) -> S(P_{i+1})."""
        arrows = dict(arrows)
        data = cls(source, target, objects, None, name)
        V = source.V
        paths: dict = {}

        def path_image(a, k):
            key = (a, k)
            f = paths.get(key)
            if f is None:
                if k == 0:
                    f = ChainMap.identity(data.obj(a))
                else:
                    f = arrows[(a + k - 1) % V].compose(path_image(a, k - 1))
                paths[key] = f
            return f

        def basis_map(a, b, p):
            return path_image(a, source.basis(a, b)[p])

        data._basis_map = basis_map
        data._path_image = path_image
        data.arrows = arrows
        if validate:
            data.validate_nakayama()
        return data

    def validate_nakayama(self):
        alg = self.source
        for i in range(alg.V):
            f = self.arrows[i]
            if f.src != self.obj(i) or f.tgt != self.obj((i + 1) % alg.V):
                raise EquivalenceError(f"{self.name}: image of beta_{i} has wrong endpoints")
            if not f.is_chain_map():
                raise EquivalenceError(f"{self.name}: image of beta_{i} is not a chain map")
        for i in range(alg.V):
            long = self._path_image(i, alg.L + 1)
            if not is_null_homotopic(long):
                raise EquivalenceError(f"{self.name}: relation of length {alg.L + 1} at vertex {i} fails")


def arrow_map(src: ProjComplex, tgt: ProjComplex, entries: dict) -> ChainMap:
    """Chain map with ``entries[d] = {(r, c): vec}``, checked."""
    f = ChainMap(src, tgt, entries)
    if not f.is_chain_map():
        raise EquivalenceError("constructed map is not a chain map")
    return f


# ---------------------------------------------------------------------------
# totalization

class Totalization:
    """F_S(U) before minimization: columns V_i = S(U^i) and the maps tau_k."""

    def __init__(self, S: EquivalenceData, U: ProjComplex):
        if U.algebra is not S.source:
            raise EquivalenceError("complex is not over the source algebra")
        self.S, self.U = S, U
        self.cols: dict = {}
        self.col_offsets: dict = {}
        for i in U.degrees():
            V, offs = direct_sum_data(*[S.obj(a) for a in U.term(i)])
            self.cols[i] = V
            self.col_offsets[i] = offs
        self.tau: dict = {}
        self._build_tau()
        self.complex, self._pos = self._assemble()

    def column_map(self, i_src, i_tgt, block: dict, other=None) -> ChainMap:
        """S applied to a block matrix U^i_src -> U'^i_tgt (other = target totalization)."""
        other = other or self
        S = self.S
        V, W = self.cols[i_src], other.cols[i_tgt]
        so, to = self.col_offsets[i_src], other.col_offsets[i_tgt]
        src_lab, tgt_lab = self.U.term(i_src), other.U.term(i_tgt)
        F = V.algebra.field
        comps: dict = {}
        for (r, c), vec in block.items():
            f = S.hom(src_lab[c], tgt_lab[r], vec)
            for d, blk in f.comps.items():
                out = comps.setdefault(d, {})
                cs, ct = so[c][d], to[r][d]
                for (rr, cc), v in blk.items():
                    key = (rr + ct, cc + cs)
                    nv = vec_add(F, out.get(key, {}), v)
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return ChainMap(V, W, comps, 0)

    def _build_tau(self):
        U = self.U
        F = U.algebra.field
        degs = U.degrees()
        for i in degs:
            if i + 1 in self.cols and U.d(i):
                f = self.column_map(i, i + 1, U.d(i))
                comps = {}
                for j, blk in f.comps.items():
                    comps[j] = blk if (i + j) % 2 == 0 else block_scale(F, F.neg(F.one), blk)
                self.tau[(1, i)] = ChainMap(f.src, f.tgt, comps, 0)
        if not degs:
            return
        width = degs[-1] - degs[0]
        for l in range(2, width + 1):
            for i in degs:
                if i + l not in self.cols:
                    continue
                target = self._sum_products(i, l)
                if not target:
                    continue
                target = {d: block_scale(F, F.neg(F.one), b) for d, b in target.items()}
                h = solve_map_equation(self.cols[i], self.cols[i + l], 1 - l, target, eps=1)
                if h is None:
                    raise EquivalenceError(f"{self.S.name}: no tau_{l} at column {i}; the data is not valid")
                if h.comps:
                    self.tau[(l, i)] = h

    def _sum_products(self, i, l) -> dict:
        """Blocks of sum_{k=1}^{l-1} tau_k tau_{l-k} on column i."""
        F = self.U.algebra.field
        out: dict = {}
        for k in range(1, l):
            a = self.tau.get((l - k, i))
            if a is None:
                continue
            b = self.tau.get((k, i + l - k))
            if b is None:
                continue
            prod = b.compose(a)
            for d, blk in prod.comps.items():
                cur = out.get(d, {})
                for key, v in blk.items():
                    nv = vec_add(F, cur.get(key, {}), v)
                    if nv:
                        cur[key] = nv
                    else:
                        cur.pop(key, None)
                out[d] = cur
        return {d: b for d, b in out.items() if b}

    def _assemble(self):
        pos: dict = {}
        terms: dict = {}
        for i in sorted(self.cols):
            V = self.cols[i]
            for j in V.degrees():
                n = i + j
                lst = terms.setdefault(n, [])
                pos[(i, j)] = len(lst)
                lst.extend(V.term(j))
        diff: dict = {}
        for i, V in self.cols.items():
            for j, blk in V.diff.items():
                self._place(diff, pos, i, j, i, j + 1, blk)
        for (k, i), f in self.tau.items():
            for j, blk in f.comps.items():
                self._place(diff, pos, i, j, i + k, j + 1 - k, blk)
        X = ProjComplex(self.S.target, {n: tuple(t) for n, t in terms.items()}, diff, check=False)
        return X, pos

    @staticmethod
    def _place(diff, pos, i, j, i2, j2, blk):
        n = i + j
        out = diff.setdefault(n, {})
        cs, ct = pos[(i, j)], pos[(i2, j2)]
        for (r, c), v in blk.items():
            out[(r + ct, c + cs)] = v

    def map_to(self, other: "Totalization", f: ChainMap) -> ChainMap:
        """F_S(f) between the raw totalizations for a degree-0 chain map f: U -> U'."""
        F = self.U.algebra.field
        alpha: dict = {}
        for i in self.cols:
            if i in other.cols and f.comp(i):
                alpha[(0, i)] = self.column_map(i, i, f.comp(i), other)
        lo = min(list(self.cols) + list(other.cols))
        hi = max(list(self.cols) + list(other.cols))
        for l in range(1, hi - lo + 1):
            for i in self.cols:
                if i + l not in other.cols:
                    continue
                target: dict = {}
                for a in range(l):
                    al, ta = alpha.get((a, i + l - a)), self.tau.get((l - a, i))
                    if al is not None and ta is not None:
                        target = _acc(F, target, al.compose(ta).comps, None)
                for a in range(1, l + 1):
                    ta, al = other.tau.get((a, i + l - a)), alpha.get((l - a, i))
                    if al is not None and ta is not None:
                        target = _acc(F, target, ta.compose(al).comps, F.neg(F.one))
                if not target:
                    continue
                h = solve_map_equation(self.cols[i], other.cols[i + l], -l, target, eps=-1)
                if h is None:
                    raise EquivalenceError(f"{self.S.name}: no alpha_{l} at column {i}")
                if h.comps:
                    alpha[(l, i)] = h
        comps: dict = {}
        for (l, i), g in alpha.items():
            for j, blk in g.comps.items():
                n = i + j
                out = comps.setdefault(n, {})
                cs, ct = self._pos[(i, j)], other._pos[(i + l, j - l)]
                for (r, c), v in blk.items():
                    key = (r + ct, c + cs)
                    nv = vec_add(F, out.get(key, {}), v)
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return ChainMap(self.complex, other.complex, comps, 0)


def _acc(F, target: dict, comps: dict, scale) -> dict:
    out = {d: dict(b) for d, b in target.items()}
    for d, blk in comps.items():
        cur = out.setdefault(d, {})
        for key, v in blk.items():
            nv = vec_add(F, cur.get(key, {}), v, scale)
            if nv:
                cur[key] = nv
            else:
                cur.pop(key, None)
    return {d: b for d, b in out.items() if b}


def f_theta_object(S: EquivalenceData, U: ProjComplex, minimal: bool = True) -> ProjComplex:
    X = Totalization(S, U).complex
    if not X.terms:
        return X
    X.validate()
    return minimize(X) if minimal else X


def f_theta_morphism(S: EquivalenceData, f: ChainMap, minimal: bool = True) -> ChainMap:
    """F_S(f); with ``minimal`` the map goes between the minimized images."""
    if f.degree != 0:
        raise EquivalenceError("only degree-0 chain maps are supported")
    A, B = Totalization(S, f.src), Totalization(S, f.tgt)
    g = A.map_to(B, f)
    if not minimal:
        return g
    _, _, ia = minimize(A.complex, with_maps=True)
    _, pb, _ = minimize(B.complex, with_maps=True)
    return pb.compose(g).compose(ia)


# ---------------------------------------------------------------------------
# standard equivalences of Nakayama algebras

def x_complex(alg: NakayamaAlgebra, i: int) -> ProjComplex:
    """X_i = P_{i-L} -beta-> P_{i-L+1} -beta^L-> P_{i+1} in degrees -2, -1, 0."""
    V, L = alg.V, alg.L
    a, b, c = (i - L) % V, (i - L + 1) % V, (i + 1) % V
    return ProjComplex(alg, {-2: (a,), -1: (b,), 0: (c,)},
                       {-2: {(0, 0): alg.path_vec(a, 1)}, -1: {(0, 0): alg.path_vec(b, L)}})


def y_complex(alg: NakayamaAlgebra, i: int, k: int) -> ProjComplex:
    """Y_{i,k} = P_i -beta^k-> P_{i+k} in degrees 0, 1."""
    V = alg.V
    return ProjComplex(alg, {0: (i % V,), 1: ((i + k) % V,)}, {0: {(0, 0): alg.path_vec(i % V, k)}})


def h_objects(alg: NakayamaAlgebra, period: int, l: int, i: int) -> ProjComplex:
    V = alg.V
    r = (i - l) % period
    if r == 0:
        return ProjComplex.stalk(alg, (i + 1) % V)
    if r == 1:
        return x_complex(alg, i - 1)
    return ProjComplex.stalk(alg, i % V)


def h_equivalence(alg: NakayamaAlgebra, period: int, l: int, name: str | None = None) -> EquivalenceData:
    """The data S_{theta_l} with the given period (m for H_l, tm for the cover)."""
    if period < 2:
        raise EquivalenceError("H_l needs m > 1")
    if alg.V % period:
        raise EquivalenceError("the period must divide the number of vertices")
    V = alg.V
    one = alg.field.one
    objs = {i: h_objects(alg, period, l, i) for i in range(V)}
    arrows = {}
    for i in range(V):
        src, tgt = objs[i], objs[(i + 1) % V]
        r = (i - l) % period
        if r == 0:
            # P_{i+1} -> X_i, identity into degree 0
            ent = {0: {(0, 0): {alg.identity_index((i + 1) % V): one}}}
        elif r == period - 1:
            # P_i (or degree 0 of X_{i-1}) -> P_{i+2}
            ent = {0: {(0, 0): alg.path_vec(i % V, 2)}}
        else:
            ent = {0: {(0, 0): alg.path_vec(i % V, 1)}}
        arrows[i] = arrow_map(src, tgt, ent)
    return EquivalenceData.from_arrows(alg, alg, objs, arrows, name or f"H{l % period}")


def q_equivalence(alg: NakayamaAlgebra, m: int, l: int) -> EquivalenceData:
    """The data S_{epsilon_l}; needs maxlen = m (t = 1)."""
    if m < 2:
        raise EquivalenceError("Q_l needs m > 1")
    if alg.L != m or alg.V % m:
        raise EquivalenceError("Q_l needs t = 1")
    V = alg.V
    one = alg.field.one

    def obj(i):
        r = (i - l) % m
        if r == 0:
            return ProjComplex.stalk(alg, (i - m) % V)
        return y_complex(alg, i - r, r)

    objs = {i: obj(i) for i in range(V)}
    arrows = {}
    for i in range(V):
        src, tgt = objs[i], objs[(i + 1) % V]
        r = (i - l) % m
        if r == 0:
            ent = {0: {(0, 0): alg.path_vec((i - m) % V, m)}}
        elif r == m - 1:
            ent = {0: {(0, 0): {0: one}}}
        else:
            ent = {0: {(0, 0): {0: one}}, 1: {(0, 0): alg.path_vec(i % V, 1)}}
        arrows[i] = arrow_map(src, tgt, ent)
    return EquivalenceData.from_arrows(alg, alg, objs, arrows, f"Q{l % m}")


def identity_equivalence(alg: BasedAlgebra) -> EquivalenceData:
    labs = list(alg.labels())
    objs = {a: ProjComplex.stalk(alg, a) for a in labs}

    def basis_map(a, b, p):
        return ChainMap(objs[a], objs[b], {0: {(0, 0): {p: alg.field.one}}})

    return EquivalenceData(alg, alg, objs, basis_map, "Id")


# ---------------------------------------------------------------------------
# functors acting on complexes

class Functor:
    name = "F"

    def obj(self, X: ProjComplex) -> ProjComplex:
        raise NotImplementedError

    def map(self, f: ChainMap) -> ChainMap:
        raise NotImplementedError


class TiltingFunctor(Functor):
    def __init__(self, data: EquivalenceData):
        self.data = data
        self.name = data.name
        self._cache: dict = {}

    def obj(self, X):
        Y = self._cache.get(X)
        if Y is None:
            Y = f_theta_object(self.data, X)
            self._cache[X] = Y
        return Y

    def map(self, f):
        return f_theta_morphism(self.data, f)


class AutomorphismFunctor(Functor):
    """P_i -> P_{pi(i)}, w -> aut(w) entrywise."""

    def __init__(self, aut: Automorphism, name: str = "aut"):
        if not aut.preserves_idempotents():
            raise EquivalenceError("automorphism must permute the idempotents")
        self.aut = aut
        self.perm = aut.permutation()
        self.name = name

    def _block(self, src, tgt, blk):
        out = {}
        for (r, c), v in blk.items():
            _, _, w = self.aut.apply_hom(src[c], tgt[r], v)
            if w:
                out[(r, c)] = w
        return out

    def obj(self, X):
        terms = {d: tuple(self.perm[a] for a in t) for d, t in X.terms.items()}
        diff = {d: self._block(X.term(d), X.term(d + 1), b) for d, b in X.diff.items()}
        return ProjComplex(X.algebra, terms, diff, check=False)

    def map(self, f):
        comps = {d: self._block(f.src.term(d), f.tgt.term(d + f.degree), b) for d, b in f.comps.items()}
        return ChainMap(self.obj(f.src), self.obj(f.tgt), comps, f.degree)


class ShiftFunctor(Functor):
    def __init__(self, s: int):
        self.s = s
        self.name = f"shift^{s}"

    def obj(self, X):
        return shift(X, self.s)

    def map(self, f):
        return shift_map(f, self.s)


# ---------------------------------------------------------------------------
# words

@dataclass(frozen=True)
class Atom:
    kind: str          # "H", "Q", "rho", "mu", "shift"
    arg: object = None

    def text(self) -> str:
        if self.kind in ("H", "Q"):
            return f"{self.kind}{self.arg}"
        if self.kind == "mu":
            return "mu[" + ",".join(str(x) for x in self.arg) + "]"
        return f"{self.kind}^{self.arg}"


_ATOM = re.compile(r"(H|Q)(-?\d+)$|(rho|shift)(?:\^(-?\d+))?$|mu\[([^\]]*)\]$")


def parse_word(text: str) -> list[Atom]:
    atoms = []
    pos = 0
    for tok in text.split():
        start = text.index(tok, pos)
        pos = start + len(tok)
        mt = _ATOM.match(tok)
        if not mt:
            raise ValueError(f"cannot parse atom {tok!r} at position {start}")
        if mt.group(1):
            atoms.append(Atom(mt.group(1), int(mt.group(2))))
        elif mt.group(3):
            atoms.append(Atom(mt.group(3), int(mt.group(4)) if mt.group(4) is not None else 1))
        else:
            coeffs = tuple(x.strip() for x in mt.group(5).split(",") if x.strip())
            atoms.append(Atom("mu", coeffs))
    return atoms


class FunctorLibrary:
    """Builds and caches the functors named by word atoms over one Nakayama algebra."""

    def __init__(self, alg: NakayamaAlgebra, m: int, period: int | None = None):
        self.alg = alg
        self.m = m
        self.period = period or m
        self._cache: dict = {}

    def functor(self, atom: Atom) -> Functor:
        f = self._cache.get(atom)
        if f is None:
            f = self._build(atom)
            self._cache[atom] = f
        return f

    def _build(self, atom: Atom) -> Functor:
        alg = self.alg
        if atom.kind == "H":
            return TiltingFunctor(h_equivalence(alg, self.period, atom.arg % self.period))
        if atom.kind == "Q":
            return TiltingFunctor(q_equivalence(alg, self.m, atom.arg % self.m))
        if atom.kind == "rho":
            return AutomorphismFunctor(Automorphism.rotation(alg, atom.arg), atom.text())
        if atom.kind == "mu":
            return AutomorphismFunctor(Automorphism.scaling(alg, [alg.field(x) for x in atom.arg]), atom.text())
        if atom.kind == "shift":
            return ShiftFunctor(atom.arg)
        raise ValueError(f"unknown atom {atom}")

    def apply(self, word, X: ProjComplex) -> ProjComplex:
        if isinstance(word, str):
            word = parse_word(word)
        for atom in word:
            X = minimize(self.functor(atom).obj(X))
        return X

    def apply_map(self, word, f: ChainMap) -> ChainMap:
        if isinstance(word, str):
            word = parse_word(word)
        for atom in word:
            f = self.functor(atom).map(f)
        return f


def apply_word(lib: FunctorLibrary, word, X: ProjComplex) -> ProjComplex:
    return lib.apply(word, X)


# ---------------------------------------------------------------------------
# natural transformations between equivalence data

def check_natural_iso(S: EquivalenceData, T: EquivalenceData, alpha: dict) -> dict:
    """Check that alpha_a: S(P_a) -> T(P_a) are homotopy isomorphisms natural on arrows.

    Returns a report ``{"chain": bool, "iso": bool, "natural": bool}``.
    """
    alg = S.source
    chain = all(alpha[a].is_chain_map() for a in alpha)
    iso = chain and all(is_homotopy_iso(alpha[a]) for a in alpha)
    natural = True
    for i in range(alg.V):
        j = (i + 1) % alg.V
        lhs = T.arrows[i].compose(alpha[i])
        rhs = alpha[j].compose(S.arrows[i])
        if not is_null_homotopic(lhs - rhs):
            natural = False
            break
    return {"chain": chain, "iso": iso, "natural": natural}


def scaling_intertwiner(alg: NakayamaAlgebra, m: int, c):
    """Data for mu_c H_0 and H_0 mu_c with the family alpha (alpha_0 = u_c, other alpha_i = Id).

    For S = S_{theta_0} the two data differ only in the images of beta_0 and
    beta_{-1}: S(beta_0) u_c and u_c S(beta_{-1}).  Returns ``(S1, S2, alpha)``.
    """
    F = alg.field
    V = alg.V
    H0 = h_equivalence(alg, m, 0)
    uc = {}
    for k, cs in enumerate(c):
        idx = alg.length_index(1, 1, k * V)
        if idx is not None and not F.is_zero(F(cs)):
            uc[idx] = F(cs)
    P1 = H0.obj(0)
    ucm = ChainMap(P1, P1, {0: {(0, 0): uc}})
    objs = {i: H0.obj(i) for i in range(V)}
    a1 = dict(H0.arrows)
    a1[0] = H0.arrows[0].compose(ucm)
    a2 = dict(H0.arrows)
    a2[V - 1] = ucm.compose(H0.arrows[V - 1])
    S1 = EquivalenceData.from_arrows(alg, alg, objs, a1, "mu_c H0")
    S2 = EquivalenceData.from_arrows(alg, alg, objs, a2, "H0 mu_c")
    alpha = {i: ChainMap.identity(objs[i]) for i in range(V)}
    alpha[0] = ucm
    return S1, S2, alpha


def tilting_report(H: ProjComplex, window: int | None = None) -> dict:
    """Dimensions of K(H, H[d]) for |d| <= window."""
    from .complexes import hom_dim
    width = (H.dmax - H.dmin) if H.terms else 0
    window = 2 * width + 1 if window is None else window
    return {d: hom_dim(H, H, d) for d in range(-window, window + 1)}


def equivalence_sum(S: EquivalenceData) -> ProjComplex:
    """The tilting complex H = direct sum of S(P_a) over all labels."""
    return direct_sum_data(*[S.obj(a) for a in S.source.labels()])[0]


__all__ = [
    "EquivalenceData", "EquivalenceError", "Totalization", "f_theta_object", "f_theta_morphism",
    "x_complex", "y_complex", "h_equivalence", "q_equivalence", "identity_equivalence",
    "Functor", "TiltingFunctor", "AutomorphismFunctor", "ShiftFunctor", "Atom", "parse_word",
    "FunctorLibrary", "apply_word", "check_natural_iso", "scaling_intertwiner", "tilting_report", "equivalence_sum",
    "find_iso", "ComplexError",
]
