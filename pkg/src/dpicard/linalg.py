"""Exact scalar fields and linear algebra over them.

Two fields are provided: the rationals ``QQ`` and prime fields ``GF(p)``.
Field elements are plain Python values in canonical form (``Fraction`` for
QQ, an ``int`` in ``range(p)`` for GF(p)); the field object carries the
arithmetic.  Nothing here ever rounds.

Dense ``Matrix`` objects back the small public operations (``rref``,
``solve``, ``kernel_basis``).  The homotopy computations build much larger
but very sparse systems, which go through ``Echelon``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import random


class FieldError(ValueError):
    pass


class Field:
    name = "field"
    characteristic = 0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @staticmethod
    def is_zero(a):
        return a == 0

    def random(self, rng: random.Random, bound: int = 1000):
        return Fraction(rng.randint(-bound, bound))

    def random_nonzero(self, rng: random.Random, bound: int = 1000):
        while True:
            x = rng.randint(-bound, bound)
            if x:
                return Fraction(x)

    @staticmethod
    def format(a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def spec(self) -> str:
        return "q"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    @staticmethod
    def is_zero(a):
        return a == 0

    def random(self, rng: random.Random, bound=None):
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random, bound=None):
        return rng.randrange(1, self.p)

    @staticmethod
    def format(a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def spec(self) -> str:
        return f"fp:{self.p}"


QQ = RationalField()
DEFAULT_PRIME = 32003


@lru_cache(maxsize=None)
def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse the CLI field syntax ``q`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        return GF(int(text[3:]))
    if text == "fp":
        return GF(DEFAULT_PRIME)
    raise FieldError(f"unknown field {text!r}; expected 'q' or 'fp:<p>'")


class Matrix:
    """Dense matrix over a single field, row-major."""

    def __init__(self, field: Field, rows: int, cols: int, data=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [field.zero] * (rows * cols)
        else:
            data = [field(x) for x in data]
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.data = tuple(data)

    @classmethod
    def from_rows(cls, field: Field, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int):
        return cls(field, rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i):
        return list(self.data[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_rows()})"

    def apply(self, x):
        """Matrix-vector product."""
        if len(x) != self.cols:
            raise ValueError("shape mismatch")
        F = self.field
        out = []
        for i in range(self.rows):
            acc = F.zero
            for j in range(self.cols):
                a = self.data[i * self.cols + j]
                if not F.is_zero(a):
                    acc = F.add(acc, F.mul(a, x[j]))
            out.append(acc)
        return out

    def __matmul__(self, other: "Matrix"):
        _same_field(self, other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = F.zero
                for k in range(self.cols):
                    acc = F.add(acc, F.mul(self[i, k], other[k, j]))
                out.append(acc)
        return Matrix(F, self.rows, other.cols, out)


def _same_field(*mats):
    fields = {m.field for m in mats}
    if len(fields) > 1:
        raise FieldError(f"mixed fields: {sorted(map(str, fields))}")


def rref(M: Matrix):
    """Reduced row echelon form.  Returns ``(R, rank, pivot_columns)``."""
    F = M.field
    rows = M.to_rows()
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        piv = next((i for i in range(r, M.rows) if not F.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(M.rows):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix(F, M.rows, M.cols, [x for row in rows for x in row]), len(pivots), pivots


def solve(A: Matrix, b):
    """Some ``x`` (a list) with ``A x = b``, or ``None`` when the system is inconsistent."""
    if isinstance(b, Matrix):
        _same_field(A, b)
        if b.cols != 1:
            raise ValueError("right-hand side must be a column")
        b = [b[i, 0] for i in range(b.rows)]
    if len(b) != A.rows:
        raise ValueError(f"shape mismatch: A has {A.rows} rows, b has {len(b)}")
    F = A.field
    ech = Echelon(F)
    for i in range(A.rows):
        row = {j: A[i, j] for j in range(A.cols) if not F.is_zero(A[i, j])}
        bi = F(b[i])
        if not F.is_zero(bi):
            row[A.cols] = bi
        ech.add(row)
    if A.cols in ech.rows:
        return None
    x = ech.particular_solution(A.cols, A.cols)
    return [x.get(j, F.zero) for j in range(A.cols)]


def kernel_basis(A: Matrix):
    """Basis of ``{x : A x = 0}`` as a list of column vectors (lists)."""
    F = A.field
    ech = Echelon(F)
    for i in range(A.rows):
        ech.add({j: A[i, j] for j in range(A.cols) if not F.is_zero(A[i, j])})
    out = []
    for vec in ech.kernel(A.cols):
        out.append([vec.get(j, F.zero) for j in range(A.cols)])
    return out


class Echelon:
    """Incremental sparse row echelon form.

    Rows are dicts ``column -> value``.  Each stored row is normalised to a
    leading 1 at its pivot and only has entries at columns >= the pivot.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        F = self.field
        row = {c: v for c, v in row.items() if not F.is_zero(v)}
        pivots = self.rows
        while True:
            hit = [c for c in row if c in pivots]
            if not hit:
                return row
            c = min(hit)
            v = row[c]
            for cc, pv in pivots[c].items():
                nv = F.sub(row.get(cc, F.zero), F.mul(v, pv))
                if F.is_zero(nv):
                    row.pop(cc, None)
                else:
                    row[cc] = nv

    def add(self, row: dict):
        """Insert a row; return its new pivot column or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        F = self.field
        c = min(row)
        inv = F.inv(row[c])
        self.rows[c] = {k: F.mul(inv, v) for k, v in row.items()}
        return c

    def particular_solution(self, ncols: int, rhs_col=None) -> dict:
        """Back-substitution with free variables set to zero."""
        F = self.field
        x = {}
        for p in sorted(self.rows, reverse=True):
            if rhs_col is not None and p == rhs_col:
                raise ValueError("inconsistent system")
            row = self.rows[p]
            acc = row.get(rhs_col, F.zero) if rhs_col is not None else F.zero
            for c, v in row.items():
                if c == p or c == rhs_col:
                    continue
                xc = x.get(c)
                if xc is not None:
                    acc = F.sub(acc, F.mul(v, xc))
            if not F.is_zero(acc):
                x[p] = acc
        return x

    def kernel(self, ncols: int) -> list[dict]:
        F = self.field
        pivots = sorted(self.rows, reverse=True)
        out = []
        for f in range(ncols):
            if f in self.rows:
                continue
            x = {f: F.one}
            for p in pivots:
                if p < f:
                    acc = F.zero
                    for c, v in self.rows[p].items():
                        if c != p and c in x:
                            acc = F.sub(acc, F.mul(v, x[c]))
                    if not F.is_zero(acc):
                        x[p] = acc
            out.append(x)
        return out


def sparse_solve(field: Field, rows: list[dict], rhs: dict, ncols: int):
    """Solve a sparse system given as equation rows; ``rhs`` maps row index to value.

    Returns a dict solution or None.
    """
    ech = Echelon(field)
    for i, row in enumerate(rows):
        r = dict(row)
        b = rhs.get(i)
        if b is not None and not field.is_zero(b):
            r[ncols] = b
        ech.add(r)
    if ncols in ech.rows:
        return None
    return ech.particular_solution(ncols, ncols)


def sparse_kernel(field: Field, rows: list[dict], ncols: int) -> list[dict]:
    ech = Echelon(field)
    for row in rows:
        ech.add(row)
    return ech.kernel(ncols)


def transpose_columns(columns: dict[int, dict]) -> dict[int, dict]:
    """Turn a column-major sparse matrix into a row-major one."""
    rows: dict[int, dict] = {}
    for j, col in columns.items():
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return rows
