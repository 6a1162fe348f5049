"""Based algebras: finite-dimensional algebras given by projective labels,
a basis of each space Hom(P_a, P_b) and a monomial multiplication table.

A morphism P_a -> P_b is stored as a sparse vector ``{basis index: coef}``
over ``basis(a, b)``.  Composition ``g o f`` of ``f: P_a -> P_b`` and
``g: P_b -> P_c`` is the algebra product ``g * f``.
"""
from __future__ import annotations

from .linalg import Echelon, Field


class AlgebraError(ValueError):
    pass


class BasedAlgebra:
    """Abstract contract shared by every concrete algebra in the package.

    Subclasses implement ``labels``, ``basis``, ``_product``,
    ``identity_index``, ``iso_class`` and ``top_index``.  All products of
    basis elements are monomial: zero or a scalar times one basis element.
    """

    field: Field
    name = "algebra"

    def __init__(self, field: Field):
        self.field = field
        self._tables: dict = {}

    # -- to be provided ---------------------------------------------------
    def labels(self):
        raise NotImplementedError

    def basis(self, a, b) -> tuple:
        raise NotImplementedError

    def _product(self, a, b, c, p, q):
        raise NotImplementedError

    def identity_index(self, a) -> int:
        raise NotImplementedError

    def iso_class(self, a):
        return a

    def top_index(self, a, b):
        """Index of the unit element of Hom(P_a, P_b) when P_a is isomorphic to P_b."""
        if self.iso_class(a) != self.iso_class(b):
            return None
        if a == b:
            return self.identity_index(a)
        raise NotImplementedError

    def format_label(self, a) -> str:
        return str(a)

    def parse_label(self, text: str):
        raise NotImplementedError

    def format_basis(self, a, b, p) -> str:
        return str(self.basis(a, b)[p])

    def parse_basis(self, a, b, token: str) -> int:
        for p in range(self.dim_hom(a, b)):
            if self.format_basis(a, b, p) == token:
                return p
        raise ValueError(f"{token!r} is not a basis element of Hom({a},{b})")

    def parse_vec(self, a, b, body: str) -> dict:
        """Parse ``c0*tok0 + c1*tok1`` (``0`` for the zero map)."""
        F = self.field
        body = body.strip()
        vec: dict = {}
        if body in ("", "0"):
            return vec
        for sign, term in _split_terms(body):
            coef, _, tok = term.partition("*")
            if not tok:
                coef, tok = "1", coef
            idx = self.parse_basis(a, b, tok.strip())
            x = F(coef.strip())
            if sign < 0:
                x = F.neg(x)
            nv = F.add(vec.get(idx, F.zero), x)
            if F.is_zero(nv):
                vec.pop(idx, None)
            else:
                vec[idx] = nv
        return vec

    def parse_hom(self, text: str) -> "HomElement":
        """Parse the text form ``<src>-><tgt> : c*tok + ...``."""
        head, sep, body = text.partition(" : ")
        if not sep:
            head, sep, body = text.partition(":")
        src, arrow, tgt = head.partition("->")
        if not sep or not arrow:
            raise ValueError(f"cannot parse morphism {text!r}")
        a, b = self.parse_label(src), self.parse_label(tgt)
        return HomElement(self, a, b, self.parse_vec(a, b, body))

    # -- derived ----------------------------------------------------------
    def dim_hom(self, a, b) -> int:
        return len(self.basis(a, b))

    def dimension(self) -> int:
        labs = list(self.labels())
        return sum(self.dim_hom(a, b) for a in labs for b in labs)

    def table(self, a, b, c) -> dict:
        key = (a, b, c)
        t = self._tables.get(key)
        if t is None:
            t = {}
            nb, nq = len(self.basis(b, c)), len(self.basis(a, b))
            for p in range(nb):
                for q in range(nq):
                    res = self._product(a, b, c, p, q)
                    if res is not None:
                        t[(p, q)] = res
            self._tables[key] = t
        return t

    def compose(self, a, b, c, g: dict, f: dict) -> dict:
        """Vector of ``g o f`` for ``f: P_a -> P_b`` and ``g: P_b -> P_c``."""
        if not g or not f:
            return {}
        F = self.field
        t = self.table(a, b, c)
        out: dict = {}
        for p, x in g.items():
            for q, y in f.items():
                res = t.get((p, q))
                if res is None:
                    continue
                r, coef = res
                v = F.mul(F.mul(x, y), coef)
                nv = F.add(out.get(r, F.zero), v)
                if F.is_zero(nv):
                    out.pop(r, None)
                else:
                    out[r] = nv
        return out

    def identity(self, a) -> dict:
        return {self.identity_index(a): self.field.one}

    def is_unit(self, a, b, f: dict) -> bool:
        top = self.top_index(a, b)
        return top is not None and not self.field.is_zero(f.get(top, self.field.zero))

    def inverse(self, a, b, f: dict) -> dict:
        """Inverse of an isomorphism ``f: P_a -> P_b`` as a vector P_b -> P_a."""
        F = self.field
        n = self.dim_hom(b, a)
        # unknown x in Hom(b, a); equations: f o x = id_b
        ida = self.identity(b)
        rows: dict = {}
        for q in range(n):
            col = self.compose(b, a, b, f, {q: F.one})
            for r, v in col.items():
                rows.setdefault(r, {})[q] = v
        ech = Echelon(F)
        m = self.dim_hom(b, b)
        for r in range(m):
            row = dict(rows.get(r, {}))
            rhs = ida.get(r)
            if rhs is not None:
                row[n] = rhs
            ech.add(row)
        if n in ech.rows:
            raise AlgebraError("morphism is not invertible")
        return ech.particular_solution(n, n)

    def format_vec(self, a, b, f: dict) -> str:
        if not f:
            return "0"
        F = self.field
        parts = []
        for p in sorted(f):
            parts.append(f"{F.format(f[p])}*{self.format_basis(a, b, p)}")
        return " + ".join(parts)


def _split_terms(body: str):
    """Split ``a + b - c`` at top-level signs, keeping parentheses intact."""
    out, depth, cur, sign = [], 0, "", 1
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith("*"):
            out.append((sign, cur.strip()))
            cur, sign = "", (1 if ch == "+" else -1)
            continue
        if depth == 0 and ch in "+-" and not cur.strip():
            sign = sign * (1 if ch == "+" else -1)
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur.strip()))
    return out


def vec_add(F, u: dict, v: dict, scale=None) -> dict:
    """``u + scale * v`` for sparse vectors (new dict)."""
    out = dict(u)
    for k, x in v.items():
        if scale is not None:
            x = F.mul(scale, x)
        nv = F.add(out.get(k, F.zero), x)
        if F.is_zero(nv):
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def vec_scale(F, s, v: dict) -> dict:
    if F.is_zero(s):
        return {}
    return {k: F.mul(s, x) for k, x in v.items()}


def vec_neg(F, v: dict) -> dict:
    return {k: F.neg(x) for k, x in v.items()}


class HomElement:
    """A morphism between indecomposable projectives with its endpoints."""

    __slots__ = ("algebra", "src", "tgt", "vec")

    def __init__(self, algebra: BasedAlgebra, src, tgt, vec=None):
        self.algebra = algebra
        self.src = src
        self.tgt = tgt
        F = algebra.field
        vec = {} if vec is None else vec
        n = algebra.dim_hom(src, tgt)
        clean = {}
        for k, x in vec.items():
            if not 0 <= k < n:
                raise AlgebraError(f"basis index {k} out of range for Hom({src},{tgt})")
            x = F(x)
            if not F.is_zero(x):
                clean[k] = x
        self.vec = clean

    @classmethod
    def identity(cls, algebra, a):
        return cls(algebra, a, a, algebra.identity(a))

    def compose(self, other: "HomElement") -> "HomElement":
        """``self o other``."""
        if other.tgt != self.src or other.algebra is not self.algebra:
            raise AlgebraError(f"cannot compose {self.src}->{self.tgt} after {other.src}->{other.tgt}")
        vec = self.algebra.compose(other.src, other.tgt, self.tgt, self.vec, other.vec)
        return HomElement(self.algebra, other.src, self.tgt, vec)

    def __mul__(self, other):
        if isinstance(other, HomElement):
            return self.compose(other)
        F = self.algebra.field
        return HomElement(self.algebra, self.src, self.tgt, vec_scale(F, F(other), self.vec))

    __rmul__ = __mul__

    def _check(self, other):
        if (other.src, other.tgt) != (self.src, self.tgt) or other.algebra is not self.algebra:
            raise AlgebraError("endpoint mismatch")

    def __add__(self, other):
        self._check(other)
        return HomElement(self.algebra, self.src, self.tgt,
                          vec_add(self.algebra.field, self.vec, other.vec))

    def __neg__(self):
        return HomElement(self.algebra, self.src, self.tgt, vec_neg(self.algebra.field, self.vec))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, HomElement) and other.algebra is self.algebra
                and (other.src, other.tgt) == (self.src, self.tgt) and other.vec == self.vec)

    def __hash__(self):
        return hash((self.src, self.tgt, tuple(sorted(self.vec.items()))))

    def is_zero(self):
        return not self.vec

    def is_invertible(self):
        return self.algebra.is_unit(self.src, self.tgt, self.vec)

    def inverse(self):
        return HomElement(self.algebra, self.tgt, self.src,
                          self.algebra.inverse(self.src, self.tgt, self.vec))

    def __repr__(self):
        return f"HomElement({self.text()})"

    def text(self) -> str:
        alg = self.algebra
        return f"{alg.format_label(self.src)}->{alg.format_label(self.tgt)} : " \
               f"{alg.format_vec(self.src, self.tgt, self.vec)}"
