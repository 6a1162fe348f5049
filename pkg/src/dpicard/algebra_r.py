"""The algebra R = kQ_{m,n}/I_{m,n}, its twist functors T_i, the tilting
complex U with the data S_omega, and the automorphism tau.

Vertices are pairs (i, j) with 1 <= i <= m and j in Z_n.  Every space
Hom(P_a, P_b) = e_b R e_a has a basis drawn from four tags:

* ``e``  the idempotent (a = b),
* ``g``  the arrow gamma_{i,j}: (i,j) -> (i+1,j),
* ``g'`` the arrow gamma'_{i,j}: (i+1,j) -> (i,j+1),
* ``z``  the socle path (i,j) -> (i,j+1).

Composites of two arrows of different tags give ``z``; all other products
of non-idempotents vanish.
"""
from __future__ import annotations

import re

from .algebra import BasedAlgebra
from .complexes import ChainMap, ProjComplex, minimize, shift
from .equivalences import EquivalenceData, EquivalenceError, Functor, TiltingFunctor, arrow_map
from .linalg import Field, QQ
from .nakayama import NakayamaAlgebra


class RAlgebra(BasedAlgebra):
    def __init__(self, m: int, n: int, field: Field = QQ):
        if m < 2:
            raise ValueError("R needs m >= 2")
        if n < 1:
            raise ValueError("R needs n >= 1")
        super().__init__(field)
        self.m, self.n = m, n
        self.name = f"R_{{{m},{n}}}"
        self._basis: dict = {}

    def __repr__(self):
        return f"RAlgebra({self.m}, {self.n}, {self.field})"

    def labels(self):
        return [(i, j) for i in range(1, self.m + 1) for j in range(self.n)]

    def vertex(self, i, j):
        return (i, j % self.n)

    def basis(self, a, b) -> tuple:
        key = (a, b)
        res = self._basis.get(key)
        if res is None:
            (i, j), n = a, self.n
            tags = []
            if a == b:
                tags.append("e")
            if i <= self.m - 1 and b == (i + 1, j):
                tags.append("g")
            if i >= 2 and b == (i - 1, (j + 1) % n):
                tags.append("g'")
            if b == (i, (j + 1) % n):
                tags.append("z")
            res = tuple(tags)
            self._basis[key] = res
        return res

    def _product(self, a, b, c, p, q):
        g, f = self.basis(b, c)[p], self.basis(a, b)[q]
        if f == "e":
            return p, self.field.one
        if g == "e":
            return self.basis(a, c).index(f), self.field.one
        if {f, g} == {"g", "g'"}:
            return self.basis(a, c).index("z"), self.field.one
        return None

    def identity_index(self, a) -> int:
        return 0

    def top_index(self, a, b):
        return 0 if a == b else None

    def format_label(self, a) -> str:
        return f"({a[0]},{a[1]})"

    def parse_label(self, text: str):
        mt = re.fullmatch(r"\s*P?\(\s*(\d+)\s*,\s*(-?\d+)\s*\)\s*", text)
        if not mt:
            raise ValueError(f"cannot parse vertex {text!r}")
        i, j = int(mt.group(1)), int(mt.group(2))
        if not 1 <= i <= self.m:
            raise ValueError(f"vertex row {i} out of range 1..{self.m}")
        return (i, j % self.n)

    def format_basis(self, a, b, p) -> str:
        return self.basis(a, b)[p]

    def element(self, a, b, tag: str, coef=1) -> dict:
        return {self.basis(a, b).index(tag): self.field(coef)}

    # named generators
    def gamma(self, i, j) -> tuple:
        a, b = (i, j % self.n), (i + 1, j % self.n)
        return a, b, self.element(a, b, "g")

    def gamma_prime(self, i, j) -> tuple:
        a, b = (i + 1, j % self.n), (i, (j + 1) % self.n)
        return a, b, self.element(a, b, "g'")

    def socle(self, i, j) -> tuple:
        a, b = (i, j % self.n), (i, (j + 1) % self.n)
        return a, b, self.element(a, b, "z")


def r_algebra(m: int, n: int, field: Field = QQ) -> RAlgebra:
    return RAlgebra(m, n, field)


# ---------------------------------------------------------------------------
# functors

class RelabelFunctor(Functor):
    """Relabel projectives by a bijection that preserves basis orderings."""

    def __init__(self, func, name: str):
        self.func = func
        self.name = name

    def obj(self, X):
        terms = {d: tuple(self.func(a) for a in t) for d, t in X.terms.items()}
        return ProjComplex(X.algebra, terms, X.diff, check=False)

    def map(self, f):
        return ChainMap(self.obj(f.src), self.obj(f.tgt), f.comps, f.degree)


def tau_functor(R: RAlgebra, power: int = 1) -> RelabelFunctor:
    """The automorphism tau^power: (i, j) -> (i, j + power)."""
    return RelabelFunctor(lambda a: (a[0], (a[1] + power) % R.n), f"tau^{power}")


def twist_data(R: RAlgebra, i: int) -> EquivalenceData:
    """T_i as a strict functor: P_a -> [sum_j sum_x P_{(i,j)} -x-> P_a] in degrees -1, 0."""
    if not 1 <= i <= R.m:
        raise ValueError(f"twist index {i} out of range 1..{R.m}")
    F = R.field
    one = F.one
    summands: dict = {}

    def obj(a):
        lst = []
        for j in range(R.n):
            c = (i, j)
            for p in range(R.dim_hom(c, a)):
                lst.append((c, p))
        summands[a] = lst
        if not lst:
            return ProjComplex.stalk(R, a)
        return ProjComplex(R, {-1: tuple(c for c, _ in lst), 0: (a,)},
                           {-1: {(0, k): {p: one} for k, (_, p) in enumerate(lst)}}, check=False)

    data = None

    def basis_map(a, b, p):
        X, Y = data.obj(a), data.obj(b)
        comps = {0: {(0, 0): {p: one}}}
        g = {p: one}
        low = {}
        for k, (c, q) in enumerate(summands[a]):
            img = R.compose(c, a, b, g, {q: one})
            for k2, (c2, q2) in enumerate(summands[b]):
                if c2 == c and q2 in img:
                    low[(k2, k)] = {0: img[q2]}
        if low:
            comps[-1] = low
        return ChainMap(X, Y, comps)

    data = EquivalenceData(R, R, obj, basis_map, f"T{i}")
    return data


def twist_functor(R: RAlgebra, i: int) -> TiltingFunctor:
    return TiltingFunctor(twist_data(R, i))


def twist_apply(R: RAlgebra, i: int, target):
    """Apply T_i to a complex or a chain map (minimized)."""
    fun = twist_functor(R, i)
    return fun.map(target) if isinstance(target, ChainMap) else fun.obj(target)


# ---------------------------------------------------------------------------
# the tilting complex U and S_omega

def u_complex(R: RAlgebra, k: int, j: int) -> ProjComplex:
    """U_{k,j} = P_{1,j} -> P_{2,j} -> ... -> P_{k,j} in degrees 0..k-1."""
    j %= R.n
    terms = {d: ((d + 1, j),) for d in range(k)}
    diff = {d: {(0, 0): R.element((d + 1, j), (d + 2, j), "g")} for d in range(k - 1)}
    return ProjComplex(R, terms, diff)


def pq(i: int, m: int, n: int):
    """The unique p in [0, m) and q in [0, n) with p + m q = i mod nm."""
    i %= n * m
    return i % m, i // m


def omega_equivalence(N: NakayamaAlgebra, R: RAlgebra) -> EquivalenceData:
    m, n = R.m, R.n
    if N.V != n * m or N.L != m:
        raise EquivalenceError("S_omega needs N = N_{nm,m} (t = 1) matching R")
    F = R.field
    one = F.one
    objs = {}
    for i in range(N.V):
        p, q = pq(i, m, n)
        objs[i] = u_complex(R, m - p, q)
    arrows = {}
    for i in range(N.V):
        p, q = pq(i, m, n)
        src, tgt = objs[i], objs[(i + 1) % N.V]
        if p <= m - 2:
            ent = {d: {(0, 0): {0: one}} for d in range(m - p - 1)}
        else:
            ent = {0: {(0, 0): R.element((1, q), (1, (q + 1) % n), "z")}}
        arrows[i] = arrow_map(src, tgt, ent)
    return EquivalenceData.from_arrows(N, R, objs, arrows, "omega")


class RWordLibrary:
    """Realizes words in s_1..s_m, r1, r2 on complexes over R:
    s_i -> T_i, r1 -> [1], r2 -> tau.  The rightmost letter acts first."""

    def __init__(self, R: RAlgebra):
        self.R = R
        self._twists: dict = {}

    def twist(self, i: int) -> TiltingFunctor:
        f = self._twists.get(i)
        if f is None:
            f = twist_functor(self.R, i)
            self._twists[i] = f
        return f

    def apply(self, word, X: ProjComplex) -> ProjComplex:
        for name, e in reversed(tuple(word)):
            if name == "r1":
                X = shift(X, e)
            elif name == "r2":
                X = tau_functor(self.R, e).obj(X)
            elif name.startswith("s") and name[1:].isdigit():
                if e != 1:
                    raise ValueError("inverse twists are not realized")
                X = minimize(self.twist(int(name[1:])).obj(X))
            else:
                raise ValueError(f"letter {name} has no realization over R")
        return X


__all__ = [
    "RWordLibrary", "RAlgebra", "r_algebra", "RelabelFunctor", "tau_functor", "twist_data",
    "twist_functor", "twist_apply", "u_complex", "pq", "omega_equivalence",
]
