"""Selfinjective Nakayama algebras k Q_V / (paths of length L+1).

Vertices are ``0..V-1`` (read cyclically) and the arrow ``beta_i`` goes
from ``i`` to ``i+1``.  The basis of Hom(P_a, P_b) = e_b N e_a is the set of
paths ``b(a, k)`` starting at ``a`` of length ``k <= L`` with
``k = b - a (mod V)``.

Elements of the whole algebra are dicts ``{(source, length): coef}``.
Automorphisms are stored by the images of the idempotents and arrows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
import random
import re

from .algebra import AlgebraError, BasedAlgebra, HomElement
from .linalg import Echelon, Field, QQ


@dataclass(frozen=True)
class NakayamaSpec:
    """Parameters (m, n, t) of N_{nm,tm}."""

    m: int
    n: int
    t: int
    require_coprime: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if min(self.m, self.n, self.t) < 1:
            raise ValueError("m, n, t must be positive")
        if self.require_coprime and gcd(self.n, self.t) != 1:
            raise ValueError(f"n={self.n} and t={self.t} must be coprime")

    @property
    def coprime(self) -> bool:
        return gcd(self.n, self.t) == 1

    @property
    def vertices(self) -> int:
        return self.n * self.m

    @property
    def maxlen(self) -> int:
        return self.t * self.m

    @property
    def depth(self) -> int:
        return (self.t + self.n - 1) // self.n

    def algebra(self, field: Field = QQ) -> "NakayamaAlgebra":
        return NakayamaAlgebra(self.vertices, self.maxlen, field, spec=self)

    def cover(self, field: Field = QQ) -> "NakayamaAlgebra":
        """The algebra N_{ntm,tm} used for the smash-product constructions."""
        return NakayamaAlgebra(self.n * self.t * self.m, self.maxlen, field)

    def __str__(self):
        return f"N(m={self.m},n={self.n},t={self.t})"


class NakayamaAlgebra(BasedAlgebra):
    def __init__(self, vertices: int, maxlen: int, field: Field = QQ, spec=None):
        if vertices < 1 or maxlen < 1:
            raise ValueError("need at least one vertex and maxlen >= 1")
        super().__init__(field)
        self.V = vertices
        self.L = maxlen
        self.spec = spec
        self.name = f"N_{{{vertices},{maxlen}}}"
        self._basis = {}

    def __repr__(self):
        return f"NakayamaAlgebra({self.V}, {self.L}, {self.field})"

    @property
    def depth(self) -> int:
        """Number of terms of a scaling sequence (the N of S_N(k))."""
        return (self.L - 1) // self.V + 1

    def labels(self):
        return range(self.V)

    def norm(self, a) -> int:
        return a % self.V

    def basis(self, a, b) -> tuple:
        key = (a, b)
        res = self._basis.get(key)
        if res is None:
            r0 = (b - a) % self.V
            res = tuple(range(r0, self.L + 1, self.V))
            self._basis[key] = res
        return res

    def length_index(self, a, b, k):
        r0 = (b - a) % self.V
        if k > self.L or k < r0 or (k - r0) % self.V:
            return None
        return (k - r0) // self.V

    def _product(self, a, b, c, p, q):
        k = self.basis(b, c)[p] + self.basis(a, b)[q]
        idx = self.length_index(a, c, k)
        if idx is None:
            return None
        return idx, self.field.one

    def identity_index(self, a) -> int:
        return 0

    def top_index(self, a, b):
        return 0 if a == b else None

    def format_basis(self, a, b, p) -> str:
        return f"b({a},{self.basis(a, b)[p]})"

    def parse_basis(self, a, b, token: str) -> int:
        mt = re.fullmatch(r"b\(\s*(-?\d+)\s*,\s*(\d+)\s*\)", token.strip())
        if not mt or int(mt.group(1)) % self.V != a:
            raise ValueError(f"{token!r} is not a path starting at {a}")
        idx = self.length_index(a, b, int(mt.group(2)))
        if idx is None:
            raise ValueError(f"{token!r} is not a path {a}->{b}")
        return idx

    def parse_label(self, text: str):
        text = text.strip()
        if text[:1] in "Pp":
            text = text[1:]
        return int(text) % self.V

    # -- morphisms by path length ----------------------------------------
    def path(self, a, k, coef=1) -> HomElement:
        """The morphism b(a, k): P_a -> P_{a+k}."""
        if k > self.L:
            raise AlgebraError(f"path length {k} exceeds {self.L}")
        b = (a + k) % self.V
        return HomElement(self, a, b, {self.length_index(a, b, k): coef})

    def path_vec(self, a, k) -> dict:
        b = (a + k) % self.V
        idx = self.length_index(a, b, k)
        return {} if idx is None else {idx: self.field.one}

    # -- whole-algebra elements ------------------------------------------
    def elem_basis(self):
        return [(s, k) for s in range(self.V) for k in range(self.L + 1)]

    def emul(self, x: dict, y: dict) -> dict:
        """Product ``x * y`` of algebra elements (``y`` is traversed first)."""
        F = self.field
        out: dict = {}
        V, L = self.V, self.L
        for (s, k), cy in y.items():
            end = (s + k) % V
            for (s2, k2), cx in x.items():
                if s2 != end or k + k2 > L:
                    continue
                key = (s, k + k2)
                nv = F.add(out.get(key, F.zero), F.mul(cx, cy))
                if F.is_zero(nv):
                    out.pop(key, None)
                else:
                    out[key] = nv
        return out

    def eadd(self, x: dict, y: dict, scale=None) -> dict:
        F = self.field
        out = dict(x)
        for key, v in y.items():
            if scale is not None:
                v = F.mul(scale, v)
            nv = F.add(out.get(key, F.zero), v)
            if F.is_zero(nv):
                out.pop(key, None)
            else:
                out[key] = nv
        return out

    def one(self) -> dict:
        return {(i, 0): self.field.one for i in range(self.V)}

    def einverse(self, x: dict) -> dict:
        """Inverse of a unit of the algebra."""
        F = self.field
        cols = self.elem_basis()
        index = {b: i for i, b in enumerate(cols)}
        rows: dict = {}
        for j, b in enumerate(cols):
            for key, v in self.emul(x, {b: F.one}).items():
                rows.setdefault(index[key], {})[j] = v
        ech = Echelon(F)
        n = len(cols)
        one = self.one()
        for i, b in enumerate(cols):
            row = dict(rows.get(i, {}))
            if b in one:
                row[n] = one[b]
            ech.add(row)
        if n in ech.rows:
            raise AlgebraError("element is not invertible")
        sol = ech.particular_solution(n, n)
        return {cols[j]: v for j, v in sol.items()}

    def hom_to_elem(self, a, b, vec: dict) -> dict:
        ks = self.basis(a, b)
        return {(a, ks[p]): v for p, v in vec.items()}

    def elem_to_hom(self, x: dict, a, b) -> dict:
        """Component of ``x`` in e_b N e_a as a Hom vector; other parts must vanish."""
        out = {}
        for (s, k), v in x.items():
            if s != a or (s + k) % self.V != b:
                raise AlgebraError(f"element has a component outside e_{b} N e_{a}")
            out[self.length_index(a, b, k)] = v
        return out

    def format_elem(self, x: dict) -> str:
        if not x:
            return "0"
        F = self.field
        return " + ".join(f"{F.format(x[key])}*b{key}".replace(" ", "") for key in sorted(x))


def parse_hom(alg: NakayamaAlgebra, text: str) -> HomElement:
    """Parse ``i->j : c0*b(i,k0) + c1*b(i,k1)``."""
    return alg.parse_hom(text)


class Automorphism:
    """An algebra automorphism given by images of e_i and beta_i."""

    def __init__(self, alg: NakayamaAlgebra, idem_images, arrow_images):
        self.alg = alg
        self.idem = [dict(x) for x in idem_images]
        self.arrows = [dict(x) for x in arrow_images]
        if len(self.idem) != alg.V or len(self.arrows) != alg.V:
            raise AlgebraError("need one image per vertex and per arrow")
        self._cache: dict = {}

    # -- constructors ----------------------------------------------------
    @classmethod
    def identity(cls, alg):
        return cls.rotation(alg, 0)

    @classmethod
    def rotation(cls, alg, l: int):
        """rho^l: e_i -> e_{i+l}, beta_i -> beta_{i+l}."""
        one = alg.field.one
        V = alg.V
        return cls(alg, [{((i + l) % V, 0): one} for i in range(V)],
                   [{((i + l) % V, 1): one} for i in range(V)])

    @classmethod
    def scaling(cls, alg, c):
        """mu_c: beta_0 -> u_c beta_0 with u_c = sum_i c_i b(1, (i-1)V); other generators fixed."""
        F = alg.field
        c = [F(x) for x in c]
        if len(c) != alg.depth:
            raise AlgebraError(f"scaling sequence must have {alg.depth} terms")
        if F.is_zero(c[0]):
            raise AlgebraError("c_1 must be nonzero")
        aut = cls.identity(alg)
        img = {}
        for i, ci in enumerate(c):
            k = i * alg.V + 1
            if k <= alg.L and not F.is_zero(ci):
                img[(0, k)] = ci
        aut.arrows[0] = img
        return aut

    @classmethod
    def conjugation(cls, alg, u: dict):
        """x -> u^{-1} x u."""
        uinv = alg.einverse(u)
        one = alg.field.one
        idem = [alg.emul(uinv, alg.emul({(i, 0): one}, u)) for i in range(alg.V)]
        arrows = [alg.emul(uinv, alg.emul({(i, 1): one}, u)) for i in range(alg.V)]
        return cls(alg, idem, arrows)

    @classmethod
    def composite(cls, auts):
        """Composite of maps, listed left to right as functions: auts[0] o auts[1] o ..."""
        auts = list(auts)
        if not auts:
            raise ValueError("empty composite")
        out = auts[-1]
        for f in reversed(auts[:-1]):
            out = f.compose(out)
        return out

    # -- evaluation ------------------------------------------------------
    def path_image(self, s: int, k: int) -> dict:
        key = (s, k)
        res = self._cache.get(key)
        if res is None:
            if k == 0:
                res = self.idem[s]
            else:
                res = self.arrows[s]
                V = self.alg.V
                for j in range(1, k):
                    res = self.alg.emul(self.arrows[(s + j) % V], res)
            self._cache[key] = res
        return res

    def apply(self, x: dict) -> dict:
        out: dict = {}
        for (s, k), v in x.items():
            out = self.alg.eadd(out, self.path_image(s, k), v)
        return out

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``."""
        return Automorphism(self.alg, [self.apply(x) for x in other.idem],
                            [self.apply(x) for x in other.arrows])

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.idem == other.idem and self.arrows == other.arrows

    def permutation(self):
        """The map i -> pi(i) with aut(e_i) = e_{pi(i)} mod radical, or None."""
        perm = []
        F = self.alg.field
        for x in self.idem:
            tops = [s for (s, k), v in x.items() if k == 0 and not F.is_zero(v)]
            if len(tops) != 1 or x[(tops[0], 0)] != F.one:
                return None
            perm.append(tops[0])
        return perm

    def preserves_idempotents(self) -> bool:
        perm = self.permutation()
        return perm is not None and all(self.idem[i] == {(perm[i], 0): self.alg.field.one}
                                        for i in range(self.alg.V))

    def apply_hom(self, a, b, vec: dict):
        """Image of a morphism P_a -> P_b; the automorphism must permute the e_i."""
        perm = self.permutation()
        if perm is None or not self.preserves_idempotents():
            raise AlgebraError("automorphism does not permute the idempotents")
        x = self.apply(self.alg.hom_to_elem(a, b, vec))
        return perm[a], perm[b], self.alg.elem_to_hom(x, perm[a], perm[b])

    def matrix_columns(self):
        basis = self.alg.elem_basis()
        return basis, [self.path_image(s, k) for (s, k) in basis]

    def inverse(self) -> "Automorphism":
        alg = self.alg
        F = alg.field
        basis, cols = self.matrix_columns()
        index = {b: i for i, b in enumerate(basis)}
        n = len(basis)
        # Solve aut(z) = target for every generator target.
        rows: dict = {}
        for j, col in enumerate(cols):
            for key, v in col.items():
                rows.setdefault(index[key], {})[j] = v
        targets = [{(i, 0): F.one} for i in range(alg.V)] + [{(i, 1): F.one} for i in range(alg.V)]
        sols = []
        for tgt in targets:
            ech = Echelon(F)
            for i in range(n):
                row = dict(rows.get(i, {}))
                v = tgt.get(basis[i])
                if v is not None:
                    row[n] = v
                ech.add(row)
            if n in ech.rows:
                raise AlgebraError("not invertible")
            sol = ech.particular_solution(n, n)
            sols.append({basis[j]: v for j, v in sol.items()})
        return Automorphism(alg, sols[:alg.V], sols[alg.V:])

    def is_homomorphism(self) -> bool:
        """Check the defining relations: idempotents, arrows between them, long paths vanish."""
        alg = self.alg
        for i in range(alg.V):
            e = self.idem[i]
            if alg.emul(e, e) != e:
                return False
            for j in range(alg.V):
                if j != i and alg.emul(e, self.idem[j]):
                    return False
            a = self.arrows[i]
            nxt = self.idem[(i + 1) % alg.V]
            if alg.emul(nxt, alg.emul(a, e)) != a:
                return False
        tot: dict = {}
        for e in self.idem:
            tot = alg.eadd(tot, e)
        if tot != alg.one():
            return False
        for i in range(alg.V):
            x = self.arrows[i]
            for j in range(1, alg.L + 1):
                x = alg.emul(self.arrows[(i + j) % alg.V], x)
            if x:
                return False
        return True

    def text(self) -> str:
        lines = []
        for i, x in enumerate(self.idem):
            lines.append(f"e{i} -> {self.alg.format_elem(x)}")
        for i, x in enumerate(self.arrows):
            lines.append(f"beta{i} -> {self.alg.format_elem(x)}")
        return "\n".join(lines)


def hom_basis(spec: NakayamaSpec, i: int, j: int) -> list[int]:
    """Lengths k <= tm with k = j - i (mod nm), ascending."""
    V, L = spec.vertices, spec.maxlen
    return [k for k in range((j - i) % V, L + 1, V)]


def compose(g: HomElement, f: HomElement) -> HomElement:
    return g.compose(f)


def build_automorphism(alg: NakayamaAlgebra, kind: str, arg=None) -> Automorphism:
    """``kind`` is ``rotation`` (arg = l), ``scaling`` (arg = c) or
    ``composite`` (arg = list of automorphisms, applied left to right as maps)."""
    if kind == "rotation":
        return Automorphism.rotation(alg, arg or 0)
    if kind == "scaling":
        return Automorphism.scaling(alg, arg)
    if kind == "composite":
        return Automorphism.composite(arg)
    raise ValueError(f"unknown automorphism kind {kind!r}")


def xi(alg: NakayamaAlgebra, l: int, c) -> Automorphism:
    """rho^l o mu_c."""
    return Automorphism.rotation(alg, l).compose(Automorphism.scaling(alg, c))


def is_inner(aut: Automorphism, rng: random.Random | None = None, attempts: int = 64):
    """An invertible y with x y = y aut(x) for all generators x, or None."""
    alg = aut.alg
    F = alg.field
    basis = alg.elem_basis()
    index = {b: i for i, b in enumerate(basis)}
    one = F.one
    gens = [{(i, 0): one} for i in range(alg.V)] + [{(i, 1): one} for i in range(alg.V)]
    images = list(aut.idem) + list(aut.arrows)
    rows = []
    for x, ax in zip(gens, images):
        eq: dict = {}
        for j, b in enumerate(basis):
            y = {b: one}
            diff = alg.eadd(alg.emul(x, y), alg.emul(y, ax), F.neg(one))
            for key, v in diff.items():
                eq.setdefault(key, {})[j] = v
        rows.extend(eq.values())
    ech = Echelon(F)
    for row in rows:
        ech.add(row)
    kernel = ech.kernel(len(basis))
    degree0 = [index[(i, 0)] for i in range(alg.V)]
    if not kernel:
        return None
    for i in degree0:
        if all(F.is_zero(v.get(i, F.zero)) for v in kernel):
            return None

    def to_elem(vec):
        return {basis[j]: v for j, v in vec.items()}

    def good(vec):
        return all(not F.is_zero(vec.get(i, F.zero)) for i in degree0)

    candidates = list(kernel)
    total: dict = {}
    for v in kernel:
        total = alg.eadd(total, v)
    candidates.append(total)
    for v in candidates:
        if good(v):
            return to_elem(v)
    rng = rng or random.Random(0)
    for _ in range(attempts):
        acc: dict = {}
        for v in kernel:
            acc = alg.eadd(acc, v, F.random_nonzero(rng))
        if good(acc):
            return to_elem(acc)
    return None


def idempotent_straightener(aut: Automorphism) -> dict:
    """A unit u with u aut(e_i) u^{-1} = e_{pi(i)} for every i."""
    alg = aut.alg
    perm = aut.permutation()
    if perm is None:
        raise AlgebraError("automorphism does not permute idempotents modulo the radical")
    one = alg.field.one
    u: dict = {}
    for i in range(alg.V):
        u = alg.eadd(u, alg.emul({(perm[i], 0): one}, aut.idem[i]))
    return u


def normalize_automorphism(aut: Automorphism):
    """Return ``(l, c)`` with [aut] = [rho^l mu_c] modulo inner automorphisms."""
    alg = aut.alg
    F = alg.field
    V = alg.V
    perm = aut.permutation()
    if perm is None:
        raise AlgebraError("automorphism does not permute idempotents modulo the radical")
    l = perm[0]
    if any(perm[i] != (i + l) % V for i in range(V)):
        raise AlgebraError("idempotents are not rotated uniformly")
    f = aut
    if not f.preserves_idempotents():
        u = idempotent_straightener(f)
        f = Automorphism.conjugation(alg, alg.einverse(u)).compose(f)
    f = Automorphism.rotation(alg, -l).compose(f)
    if not f.preserves_idempotents() or f.permutation() != list(range(V)):
        raise AlgebraError("normalization failed to fix idempotents")
    depth = alg.depth
    g = Automorphism.identity(alg)
    factors = []
    for k in range(V):
        img = g.compose(f).arrows[k]
        a = []
        for s in range(depth):
            a.append(img.get((k, s * V + 1), F.zero))
        for (src, ln) in img:
            if src != k or (ln - 1) % V:
                raise AlgebraError(f"image of beta_{k} is not of the form unit * beta_{k}")
        if F.is_zero(a[0]):
            raise AlgebraError(f"image of beta_{k} has zero leading coefficient")
        mu = Automorphism.scaling(alg, a)
        conj = Automorphism.composite([Automorphism.rotation(alg, k), mu, Automorphism.rotation(alg, -k)])
        factors.append(mu)
        g = conj.inverse().compose(g)
    # f = prod_k rho^k mu_{a_k} rho^-k, and each conjugate equals mu_{a_k} modulo inner.
    h = Automorphism.composite(factors)
    img = h.arrows[0]
    c = [img.get((0, s * V + 1), F.zero) for s in range(depth)]
    return l % V, c
