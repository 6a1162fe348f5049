"""Smash products with C_t = <r> acting on the cover N~ = N_{ntm,tm} by rho^{nm}.

The smash algebra N~ # C_t has projectives P_a = (e_a # 1)(N~ # C_t) for
a in Z_{ntm}; P_a and P_{a+nm} are isomorphic.  A basis of Hom(P_a, P_b) is
given by pairs ``(k, l)``: the element ``x # r^k`` where x is the path of
length l from ``a + k nm`` to ``b``.  Products follow
``(y # r^j)(x # r^k) = y rho^{j nm}(x) # r^{j+k}``.

For a complex U over N~, the twisted complex U # r^k is identified with the
complex obtained by relabelling every P_a as P_{a - k nm} (vectors are
unchanged, since rho^{nm} preserves path lengths).
"""
from __future__ import annotations

from math import gcd

from .algebra import BasedAlgebra
from .complexes import (
    ChainMap, ProjComplex, direct_sum_data, find_iso, homotopic, inclusion, projection,
)
from .equivalences import EquivalenceData, EquivalenceError, FunctorLibrary, f_theta_object, h_equivalence
from .nakayama import NakayamaAlgebra, NakayamaSpec


class SmashAlgebra(BasedAlgebra):
    def __init__(self, base: NakayamaAlgebra, t: int, step: int):
        if base.V != t * step:
            raise ValueError("the action rho^step must have order t")
        super().__init__(base.field)
        self.base = base
        self.t = t
        self.step = step
        self.V = base.V
        self.L = base.L
        self.name = f"{base.name}#C_{t}"
        self._basis: dict = {}
        self._index: dict = {}

    def __repr__(self):
        return f"SmashAlgebra({self.base!r}, t={self.t})"

    def labels(self):
        return range(self.V)

    def basis(self, a, b) -> tuple:
        key = (a, b)
        res = self._basis.get(key)
        if res is None:
            res = tuple((k, l) for k in range(self.t)
                        for l in self.base.basis((a + k * self.step) % self.V, b))
            self._basis[key] = res
            self._index[key] = {x: i for i, x in enumerate(res)}
        return res

    def index(self, a, b, k, l):
        self.basis(a, b)
        return self._index[(a, b)].get((k % self.t, l))

    def _product(self, a, b, c, p, q):
        j, l2 = self.basis(b, c)[p]
        k, l1 = self.basis(a, b)[q]
        if l1 + l2 > self.L:
            return None
        return self.index(a, c, k + j, l1 + l2), self.field.one

    def identity_index(self, a) -> int:
        return self.index(a, a, 0, 0)

    def iso_class(self, a):
        return a % self.step

    def top_index(self, a, b):
        if (b - a) % self.step:
            return None
        return self.index(a, b, ((b - a) % self.V) // self.step, 0)

    def format_basis(self, a, b, p) -> str:
        k, l = self.basis(a, b)[p]
        return f"b({(a + k * self.step) % self.V},{l})#r^{k}"

    def parse_label(self, text: str):
        return self.base.parse_label(text)

    def element(self, a, b, k, l, coef=1) -> dict:
        idx = self.index(a, b, k, l)
        if idx is None:
            raise ValueError(f"no basis element ({k},{l}) in Hom({a},{b})")
        return {idx: self.field(coef)}


def smash_algebra(spec: NakayamaSpec, field=None) -> SmashAlgebra:
    """N~ # C_t for N~ = N_{ntm,tm} with r acting as rho^{nm}."""
    if gcd(spec.n, spec.t) != 1:
        raise ValueError("the smash construction needs gcd(n, t) = 1")
    base = spec.cover(field) if field is not None else spec.cover()
    return SmashAlgebra(base, spec.t, spec.n * spec.m)


# ---------------------------------------------------------------------------
# twisted complexes, U # G and s_g

def twist(X: ProjComplex, k: int, step: int) -> ProjComplex:
    """U # r^k over N~, realized by relabelling P_a as P_{a - k step}."""
    V = X.algebra.V
    terms = {d: tuple((a - k * step) % V for a in t) for d, t in X.terms.items()}
    return ProjComplex(X.algebra, terms, X.diff, check=False)


def twist_map(f: ChainMap, k: int, step: int) -> ChainMap:
    return ChainMap(twist(f.src, k, step), twist(f.tgt, k, step), f.comps, f.degree)


def _lift_block(S: SmashAlgebra, src: tuple, tgt: tuple, blk: dict, k: int = 0) -> dict:
    """Entries x over N~ (P_c -> P_d) become x # r^k viewed as P_c -> P_{d + k step}."""
    base = S.base
    out = {}
    for (r, c), vec in blk.items():
        a, b = src[c], tgt[r]
        bb = (b + k * S.step) % S.V
        lens = base.basis(a, b)
        out[(r, c)] = {S.index(a, bb, k, lens[p]): x for p, x in vec.items()}
    return out


def smash_complex(U: ProjComplex, S: SmashAlgebra) -> ProjComplex:
    """U # G over the smash algebra (same labels, entries x # 1)."""
    if U.algebra is not S.base:
        raise ValueError("complex must live over the base of the smash algebra")
    diff = {d: _lift_block(S, U.term(d), U.term(d + 1), b) for d, b in U.diff.items()}
    return ProjComplex(S, dict(U.terms), diff, check=False)


def smash_map(f: ChainMap, S: SmashAlgebra) -> ChainMap:
    comps = {d: _lift_block(S, f.src.term(d), f.tgt.term(d + f.degree), b) for d, b in f.comps.items()}
    return ChainMap(smash_complex(f.src, S), smash_complex(f.tgt, S), comps, f.degree)


def s_map(U: ProjComplex, k: int, S: SmashAlgebra) -> ChainMap:
    """s_{r^k}: (U # r^k) # G -> U # G, x # r^k # h -> x # r^k h."""
    src = smash_complex(twist(U, k, S.step), S)
    tgt = smash_complex(U, S)
    comps = {}
    for d, t in U.terms.items():
        comps[d] = {(i, i): S.element((a - k * S.step) % S.V, a, k, 0) for i, a in enumerate(t)}
    return ChainMap(src, tgt, comps)


# ---------------------------------------------------------------------------
# the tilting C_t-functor (H_l, theta_l, psi_l)

class CtTiltingFunctor:
    """H-bar_l = sum_i S(P_i) over N~ for S = S_{theta_l} with period m, and psi_l."""

    def __init__(self, spec: NakayamaSpec, l: int, field=None):
        if spec.m < 2:
            raise EquivalenceError("the C_t-functor needs m > 1")
        self.spec = spec
        self.S = smash_algebra(spec, field)
        self.base = self.S.base
        self.step = self.S.step
        self.t = spec.t
        self.l = l % spec.m
        self.data = h_equivalence(self.base, spec.m, self.l, f"Hbar{self.l}")
        V = self.base.V
        self.H, self.offsets = direct_sum_data(*[self.data.obj(i) for i in range(V)])
        self.psi = self._build_psi()
        self._powers = {0: ChainMap.identity(self.H)}

    def block(self, i) -> ProjComplex:
        return self.data.obj(i % self.base.V)

    def _build_psi(self) -> ChainMap:
        """psi maps the summand S(P_i) identically onto the summand i + nm of H # r."""
        V, step = self.base.V, self.step
        tgt = twist(self.H, 1, step)
        comps: dict = {}
        for i in range(V):
            j = (i + step) % V
            part = self.block(i)
            if twist(self.block(j), 1, step) != part:
                raise EquivalenceError(f"S(P_{j}) # r differs from S(P_{i})")
            for d, t in part.terms.items():
                blk = comps.setdefault(d, {})
                for k, a in enumerate(t):
                    blk[(self.offsets[j][d] + k, self.offsets[i][d] + k)] = self.base.identity(a)
        psi = ChainMap(self.H, tgt, comps)
        if not psi.is_chain_map():
            raise EquivalenceError("psi is not a chain map")
        return psi

    def psi_power(self, k: int) -> ChainMap:
        """psi^k = (psi # r^{k-1}) ... (psi # r) psi : H -> H # r^k (k >= 0)."""
        if k < 0:
            raise ValueError("psi^k is only defined for k >= 0")
        res = self._powers.get(k)
        if res is None:
            res = twist_map(self.psi, k - 1, self.step).compose(self.psi_power(k - 1))
            self._powers[k] = res
        return res

    def endo(self, i: int, vec_len: int) -> ChainMap:
        """theta(x) for the path x of length vec_len from i, as an endomorphism of H."""
        V = self.base.V
        a, b = i % V, (i + vec_len) % V
        f = self.data.hom(a, b, self.base.path_vec(a, vec_len))
        inc = inclusion(self.H, self.offsets, b, self.block(b))
        pr = projection(self.H, self.offsets, a, self.block(a))
        return inc.compose(f).compose(pr)

    def check_psi_order(self) -> bool:
        """psi^t = Id_H up to homotopy, and psi^{k+t} = psi^k for k = 0, 1."""
        ok = homotopic(self.psi_power(self.t), ChainMap.identity(self.H))
        for k in (0, 1):
            ok = ok and homotopic(self.psi_power(k + self.t), self.psi_power(k))
        return ok

    def check_generators(self) -> dict:
        """psi theta(r^{-1}a) = (theta(a) # r) psi for every idempotent and arrow a.

        Returns ``{(i, length): bool}`` for a = e_i (length 0) and beta_i (length 1).
        """
        out = {}
        for i in range(self.base.V):
            for length in (0, 1):
                lhs = self.psi.compose(self.endo(i - self.step, length))
                rhs = twist_map(self.endo(i, length), 1, self.step).compose(self.psi)
                out[(i, length)] = homotopic(lhs, rhs)
        return out

    def check_cover_compatibility(self, budget: int = 64) -> dict:
        """F_{theta_l}(P_i) versus H~_l H~_{l+m} ... H~_{l+(t-1)m}(P_i) for every i."""
        m = self.spec.m
        lib = FunctorLibrary(self.base, self.t * m, period=self.t * m)
        word = " ".join(f"H{self.l + j * m}" for j in range(self.t))
        out = {}
        for i in range(self.base.V):
            P = ProjComplex.stalk(self.base, i)
            out[i] = find_iso(f_theta_object(self.data, P), lib.apply(word, P), budget=budget)
        return out


def ct_tilting_functor(spec: NakayamaSpec, l: int, field=None) -> CtTiltingFunctor:
    return CtTiltingFunctor(spec, l, field)


def theta_smash_psi(ct: CtTiltingFunctor) -> EquivalenceData:
    """(theta # psi)(x # r^k) = s_{r^k} (psi^k # G) (theta(r^{-k} x) # G)."""
    S, base, step, V = ct.S, ct.base, ct.step, ct.base.V
    objs = {a: smash_complex(ct.block(a), S) for a in range(V)}

    def basis_map(a, b, p):
        k, length = S.basis(a, b)[p]
        c = (b - k * step) % V                     # r^{-k} x is the path a -> c
        f = ct.data.hom(a, c, base.path_vec(a, length))
        # psi^k restricted to the summand c, landing in the summand b of H # r^k
        Hk = twist(ct.H, k, step)
        inc = inclusion(ct.H, ct.offsets, c, ct.block(c))
        pr = projection(Hk, ct.offsets, b, twist(ct.block(b), k, step))
        pk = pr.compose(ct.psi_power(k)).compose(inc)
        lifted = smash_map(pk.compose(f), S)
        return s_map(ct.block(b), k, S).compose(lifted)

    return EquivalenceData(S, S, objs, basis_map, f"theta{ct.l}#psi")


def morita_evidence(spec: NakayamaSpec, S: SmashAlgebra | None = None) -> dict:
    """Compare the smash algebra with N_{nm,tm}: dimension, simples, hom dimensions."""
    S = S or smash_algebra(spec)
    N = spec.algebra(S.field)
    nm = spec.n * spec.m
    homs = all(S.dim_hom(a, b) == N.dim_hom(a % nm, b % nm) for a in S.labels() for b in S.labels())
    return {
        "dimension": S.dimension() == spec.t * S.base.dimension(),
        "simples": len({S.iso_class(a) for a in S.labels()}) == N.V,
        "hom_dimensions": homs,
    }


__all__ = [
    "SmashAlgebra", "smash_algebra", "twist", "twist_map", "smash_complex", "smash_map", "s_map",
    "CtTiltingFunctor", "ct_tilting_functor", "theta_smash_psi", "morita_evidence",
]
